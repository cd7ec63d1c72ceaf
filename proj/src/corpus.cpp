#include "obk/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "obk/errors.hpp"
#include "obk/json_io.hpp"
#include "obk/words.hpp"

namespace obk {
namespace corpus {

namespace {

std::string sigma_obk(int k) {
    std::string s = "# Two tb -1 unknots clasped " + std::to_string(k) +
                    " times, with the squared double-twist monodromy.\n"
                    "knot K1:\n  l0\nknot K2 orient -:\n  l2";
    for (int i = 0; i < 2 * k; ++i) s += " x1";
    s += " r2 r0\ntwists: K2 K1 K2 K1\n";
    return s;
}

// Single-step trivialization of <g | g>.
std::string trace_g_json() {
    words::MoveTrace t;
    t.initial = words::Presentation::parse("<g | g>");
    words::PresMove m;
    m.kind = words::MoveKind::AC4Remove;
    m.gen = "g";
    t.steps.push_back(m);
    t.final = words::Presentation::parse("< | >");
    return json_io::dump(json_io::trace_to_json(t));
}

// Three-step trivialization of <a,b | ab, b>.
std::string trace_ab_json() {
    words::MoveTrace t;
    t.initial = words::Presentation::parse("<a,b | ab, b>");
    words::PresMove mul;
    mul.kind = words::MoveKind::AC3;
    mul.target = 0;
    mul.source = 1;
    mul.exp = -1;
    t.steps.push_back(mul);
    words::PresMove rma;
    rma.kind = words::MoveKind::AC4Remove;
    rma.gen = "a";
    t.steps.push_back(rma);
    words::PresMove rmb;
    rmb.kind = words::MoveKind::AC4Remove;
    rmb.gen = "b";
    t.steps.push_back(rmb);
    t.final = words::Presentation::parse("< | >");
    return json_io::dump(json_io::trace_to_json(t));
}

std::vector<std::pair<std::string, std::string>> build() {
    std::vector<std::pair<std::string, std::string>> f;
    f.emplace_back("unknot_rot0.obk",
                   "# Standard Legendrian unknot: tb -1, rot 0.\n"
                   "knot K:\n  l0 r0\n");
    f.emplace_back("shark_pos.obk",
                   "# Once-stabilized unknot: tb -2, rot +1.\n"
                   "knot K:\n  l0 l1 r2 r0\n");
    f.emplace_back("shark_neg.obk",
                   "# Once-stabilized unknot: tb -2, rot -1.\n"
                   "knot K:\n  l0 l0 r1 r0\n");
    for (int k : {1, 2, 3, 5}) f.emplace_back("sigma" + std::to_string(k) + ".obk", sigma_obk(k));
    f.emplace_back("figure5.obk",
                   "# Two disjoint rot +1 circles (tb -2 each).\n"
                   "knot K1:\n  l0 l1 r2 r0\n"
                   "knot K2:\n  l0 l1 r2 r0\n");
    f.emplace_back("cancelling_pair.obk",
                   "# One 1-handle with a tb -1 circle running once through it.\n"
                   "handles: g\n"
                   "knot K:\n  l0 h0:g+ r0\n");
    f.emplace_back("dtstar_tau.obk",
                   "# Single tb -1 unknot, one positive twist.\n"
                   "knot K:\n  l0 r0\ntwists: K\n");
    f.emplace_back("dtstar_tau2.obk",
                   "# Single tb -1 unknot, squared twist.\n"
                   "knot K:\n  l0 r0\ntwists: K K\n");
    f.emplace_back("trace_g.json", trace_g_json());
    f.emplace_back("trace_ab.json", trace_ab_json());
    return f;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& files() {
    static const std::vector<std::pair<std::string, std::string>> f = build();
    return f;
}

const std::string& text(const std::string& name) {
    for (const auto& [n, body] : files())
        if (n == name) return body;
    throw ValidationError("no corpus file named '" + name + "'");
}

std::vector<std::string> emit_examples(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    for (const auto& [name, body] : files()) {
        fs::path p = fs::path(dir) / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw ValidationError("cannot write '" + p.string() + "'");
        out << body;
        out.close();
        if (!out) throw ValidationError("write failed for '" + p.string() + "'");
        written.push_back(p.string());
    }
    return written;
}

}  // namespace corpus
}  // namespace obk
