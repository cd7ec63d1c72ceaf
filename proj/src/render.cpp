#include <algorithm>
#include <sstream>
#include <vector>

#include "obk/errors.hpp"
#include "obk/front.hpp"

// Fixed-grid SVG rendering: column i occupies x in [M + i*CW, M + (i+1)*CW],
// slot s sits at y = M + s*RH.  Integer coordinates only, so output is
// byte-stable across runs and platforms.

namespace obk {
namespace front {

namespace {

constexpr int CW = 48;  // column width
constexpr int RH = 32;  // row height
constexpr int M = 24;   // margin

int ypos(int slot) { return M + slot * RH; }

}  // namespace

std::string render_svg(const FrontDiagram& f) {
    Analysis check(f);  // reject invalid diagrams before drawing
    (void)check;
    const std::vector<Event> events = f.all_events();

    // Depth pass: strand count before each column.
    std::vector<int> depth(events.size() + 1, 0);
    for (std::size_t i = 0; i < events.size(); ++i) {
        int delta = 0;
        if (events[i].kind == EventKind::LeftCusp) delta = 2;
        if (events[i].kind == EventKind::RightCusp) delta = -2;
        depth[i + 1] = depth[i] + delta;
    }
    const int maxdepth = *std::max_element(depth.begin(), depth.end());
    const int width = 2 * M + std::max<int>(1, events.size()) * CW;
    const int height = 2 * M + std::max(0, maxdepth - 1) * RH;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<style>.strand,.cusp,.crossing line{stroke:#1a1a1a;stroke-width:2;fill:none}"
          ".handleball{fill:#fff;stroke:#1a1a1a;stroke-width:2}"
          ".handlelabel{font:12px monospace;fill:#1a1a1a}</style>\n";

    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        const int x0 = M + static_cast<int>(i) * CW, x1 = x0 + CW;
        const int n = depth[i];

        // Slot-preserving columns (crossing, handle pass) draw the
        // uninvolved strands straight through.
        auto pass_through = [&](int except_lo, int except_hi) {
            for (int s = 0; s < n; ++s) {
                if (s >= except_lo && s <= except_hi) continue;
                os << "<line class=\"strand\" x1=\"" << x0 << "\" y1=\"" << ypos(s)
                   << "\" x2=\"" << x1 << "\" y2=\"" << ypos(s) << "\"/>\n";
            }
        };

        switch (e.kind) {
            case EventKind::LeftCusp: {
                // Strands at and below e.slot shift down by two rows on
                // the right side of this column.
                for (int s = 0; s < n; ++s) {
                    int outs = s >= e.slot ? s + 2 : s;
                    os << "<line class=\"strand\" x1=\"" << x0 << "\" y1=\"" << ypos(s)
                       << "\" x2=\"" << x1 << "\" y2=\"" << ypos(outs) << "\"/>\n";
                }
                int ymid = ypos(e.slot) + RH / 2;
                os << "<path class=\"cusp\" d=\"M" << x1 << ' ' << ypos(e.slot) << " Q" << x0 + 8
                   << ' ' << ypos(e.slot) << ' ' << x0 + 8 << ' ' << ymid << " Q" << x0 + 8 << ' '
                   << ypos(e.slot + 1) << ' ' << x1 << ' ' << ypos(e.slot + 1) << "\"/>\n";
                break;
            }
            case EventKind::RightCusp: {
                for (int s = 0; s < n; ++s) {
                    if (s == e.slot || s == e.slot + 1) continue;
                    int outs = s > e.slot + 1 ? s - 2 : s;
                    os << "<line class=\"strand\" x1=\"" << x0 << "\" y1=\"" << ypos(s)
                       << "\" x2=\"" << x1 << "\" y2=\"" << ypos(outs) << "\"/>\n";
                }
                int ymid = ypos(e.slot) + RH / 2;
                os << "<path class=\"cusp\" d=\"M" << x0 << ' ' << ypos(e.slot) << " Q" << x1 - 8
                   << ' ' << ypos(e.slot) << ' ' << x1 - 8 << ' ' << ymid << " Q" << x1 - 8 << ' '
                   << ypos(e.slot + 1) << ' ' << x0 << ' ' << ypos(e.slot + 1) << "\"/>\n";
                break;
            }
            case EventKind::Crossing: {
                pass_through(e.slot, e.slot + 1);
                os << "<g class=\"crossing\">"
                   << "<line x1=\"" << x0 << "\" y1=\"" << ypos(e.slot) << "\" x2=\"" << x1
                   << "\" y2=\"" << ypos(e.slot + 1) << "\"/>"
                   << "<line x1=\"" << x0 << "\" y1=\"" << ypos(e.slot + 1) << "\" x2=\"" << x1
                   << "\" y2=\"" << ypos(e.slot) << "\"/></g>\n";
                break;
            }
            case EventKind::HandlePass: {
                pass_through(e.slot, e.slot);
                int y = ypos(e.slot);
                os << "<line class=\"strand\" x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\""
                   << x0 + 14 << "\" y2=\"" << y << "\"/>\n";
                os << "<line class=\"strand\" x1=\"" << x1 - 14 << "\" y1=\"" << y << "\" x2=\""
                   << x1 << "\" y2=\"" << y << "\"/>\n";
                os << "<circle class=\"handleball\" cx=\"" << x0 + 14 << "\" cy=\"" << y
                   << "\" r=\"5\"/>";
                os << "<circle class=\"handleball\" cx=\"" << x1 - 14 << "\" cy=\"" << y
                   << "\" r=\"5\"/>\n";
                os << "<text class=\"handlelabel\" x=\"" << x0 + CW / 2 - 4 << "\" y=\"" << y - 6
                   << "\">" << e.handle << (e.dir > 0 ? "+" : "-") << "</text>\n";
                break;
            }
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace front
}  // namespace obk
