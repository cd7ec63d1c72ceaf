#include "obk/front.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "obk/errors.hpp"

namespace obk {
namespace front {

std::vector<Event> FrontDiagram::all_events() const {
    std::vector<Event> out;
    for (const KnotBlock& b : blocks) out.insert(out.end(), b.events.begin(), b.events.end());
    return out;
}

bool FrontDiagram::blocks_equal(const FrontDiagram& o) const {
    if (blocks.size() != o.blocks.size()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].name != o.blocks[i].name || blocks[i].reversed != o.blocks[i].reversed ||
            blocks[i].events != o.blocks[i].events)
            return false;
    }
    return true;
}

namespace {

bool valid_knot_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

Event parse_event_token(const std::string& tok, int line, int col) {
    Event e;
    e.line = line;
    e.col = col;
    if (tok.size() < 2) throw SyntaxError("bad event token '" + tok + "'", line, col);
    char head = tok[0];
    std::size_t pos = 1;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == 1) throw SyntaxError("event '" + tok + "' needs a slot number", line, col);
    e.slot = std::stoi(tok.substr(1, pos - 1));
    switch (head) {
        case 'l': e.kind = EventKind::LeftCusp; break;
        case 'r': e.kind = EventKind::RightCusp; break;
        case 'x': e.kind = EventKind::Crossing; break;
        case 'h': e.kind = EventKind::HandlePass; break;
        default: throw SyntaxError("unknown event kind in '" + tok + "'", line, col);
    }
    if (e.kind == EventKind::HandlePass) {
        if (pos >= tok.size() || tok[pos] != ':')
            throw SyntaxError("handle pass needs ':<handle><+|->' in '" + tok + "'", line, col);
        ++pos;
        std::size_t start = pos;
        while (pos < tok.size() && tok[pos] != '+' && tok[pos] != '-') ++pos;
        if (pos == start || pos != tok.size() - 1)
            throw SyntaxError("handle pass needs ':<handle><+|->' in '" + tok + "'", line, col);
        e.handle = tok.substr(start, pos - start);
        e.dir = tok[pos] == '+' ? 1 : -1;
    } else if (pos != tok.size()) {
        throw SyntaxError("trailing characters in event '" + tok + "'", line, col);
    }
    return e;
}

}  // namespace

FrontDiagram parse_front(const std::string& text) {
    FrontDiagram f;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    bool saw_twists = false;
    bool saw_knot = false;

    auto tokenize = [](const std::string& s, int lineno) {
        std::vector<std::pair<std::string, int>> toks;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            std::size_t start = i;
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i > start) toks.emplace_back(s.substr(start, i - start), static_cast<int>(start) + 1);
        }
        (void)lineno;
        return toks;
    };

    while (std::getline(is, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        auto toks = tokenize(raw, lineno);
        if (toks.empty()) continue;

        const std::string& first = toks[0].first;
        if (first == "handles:" || first == "handles") {
            if (first == "handles" && (toks.size() < 2 || toks[1].first != ":"))
                throw SyntaxError("expected 'handles:'", lineno, toks[0].second);
            if (saw_knot || saw_twists)
                throw SyntaxError("'handles:' must come before the knot blocks", lineno, 1);
            if (!f.handles.empty())
                throw SyntaxError("duplicate 'handles:' line", lineno, 1);
            std::size_t from = first == "handles" ? 2 : 1;
            for (std::size_t i = from; i < toks.size(); ++i) {
                const std::string& h = toks[i].first;
                if (!valid_knot_name(h) || std::isupper(static_cast<unsigned char>(h[0])))
                    throw SyntaxError("bad handle name '" + h + "'", lineno, toks[i].second);
                if (std::find(f.handles.begin(), f.handles.end(), h) != f.handles.end())
                    throw SyntaxError("duplicate handle '" + h + "'", lineno, toks[i].second);
                f.handles.push_back(h);
            }
            continue;
        }
        if (first == "knot") {
            if (saw_twists) throw SyntaxError("'twists:' must be the last section", lineno, 1);
            std::size_t colon = raw.find(':');
            if (colon == std::string::npos)
                throw SyntaxError("knot header needs a ':'", lineno, 1);
            auto head = tokenize(raw.substr(0, colon), lineno);
            if (head.size() < 2) throw SyntaxError("knot header needs a name", lineno, 1);
            KnotBlock b;
            b.name = head[1].first;
            if (!valid_knot_name(b.name))
                throw SyntaxError("bad knot name '" + b.name + "'", lineno, head[1].second);
            if (head.size() == 4 && head[2].first == "orient" &&
                (head[3].first == "-" || head[3].first == "+")) {
                b.reversed = head[3].first == "-";
            } else if (head.size() != 2) {
                throw SyntaxError("knot header is 'knot <name> [orient -]:'", lineno, 1);
            }
            for (const KnotBlock& prev : f.blocks)
                if (prev.name == b.name)
                    throw SyntaxError("duplicate knot name '" + b.name + "'", lineno, head[1].second);
            f.blocks.push_back(std::move(b));
            saw_knot = true;
            for (auto& [tok, col] : tokenize(raw.substr(colon + 1), lineno))
                f.blocks.back().events.push_back(
                    parse_event_token(tok, lineno, static_cast<int>(colon) + 1 + col));
            continue;
        }
        if (first == "twists:" || first == "twists") {
            if (saw_twists) throw SyntaxError("duplicate 'twists:' line", lineno, 1);
            saw_twists = true;
            std::size_t from = 1;
            if (first == "twists") {
                if (toks.size() < 2 || toks[1].first != ":")
                    throw SyntaxError("expected 'twists:'", lineno, toks[0].second);
                from = 2;
            }
            for (std::size_t i = from; i < toks.size(); ++i)
                f.twist_tokens.push_back(toks[i].first);
            continue;
        }
        // Anything else must be event tokens inside the current block.
        if (saw_twists) throw SyntaxError("'twists:' must be the last section", lineno, 1);
        if (f.blocks.empty())
            throw SyntaxError("events before the first 'knot' header", lineno, toks[0].second);
        for (auto& [tok, col] : toks)
            f.blocks.back().events.push_back(parse_event_token(tok, lineno, col));
    }
    // Surface validation errors (dangling strands, bad slots...) at parse
    // time so `parse` accepts exactly the meaningful files.
    Analysis check(f);
    return f;
}

std::string to_obk(const FrontDiagram& f) {
    std::ostringstream os;
    if (!f.handles.empty()) {
        os << "handles:";
        for (const std::string& h : f.handles) os << ' ' << h;
        os << '\n';
    }
    for (const KnotBlock& b : f.blocks) {
        os << "knot " << b.name << (b.reversed ? " orient -:" : ":") << '\n';
        std::size_t i = 0;
        while (i < b.events.size()) {
            os << " ";
            for (std::size_t n = 0; n < 16 && i < b.events.size(); ++n, ++i) {
                const Event& e = b.events[i];
                os << ' ';
                switch (e.kind) {
                    case EventKind::LeftCusp: os << 'l' << e.slot; break;
                    case EventKind::RightCusp: os << 'r' << e.slot; break;
                    case EventKind::Crossing: os << 'x' << e.slot; break;
                    case EventKind::HandlePass:
                        os << 'h' << e.slot << ':' << e.handle << (e.dir > 0 ? '+' : '-');
                        break;
                }
            }
            os << '\n';
        }
    }
    if (!f.twist_tokens.empty()) {
        os << "twists:";
        for (const std::string& t : f.twist_tokens) os << ' ' << t;
        os << '\n';
    }
    return os.str();
}

namespace {

struct CuspRec {
    std::size_t column;
    int upper, lower;
    bool left;
    int slot;
};
struct CrossRec {
    std::size_t column;
    int upper_in, lower_in;
};
struct PassRec {
    std::size_t column;
    int strand;
    std::string handle;
    int dir;
};

std::string where(const Event& e, std::size_t column) {
    std::ostringstream os;
    os << "column " << column + 1;
    if (e.line) os << " (line " << e.line << ")";
    return os.str();
}

}  // namespace

Analysis::Analysis(const FrontDiagram& f) {
    const std::vector<Event> events = f.all_events();

    // Pass 1: run the event columns over the strand stack.
    std::vector<int> active;
    std::vector<CuspRec> cusps;
    std::vector<CrossRec> crossings;
    std::vector<PassRec> passes;
    int next_id = 0;

    for (std::size_t col = 0; col < events.size(); ++col) {
        const Event& e = events[col];
        const int n = static_cast<int>(active.size());
        switch (e.kind) {
            case EventKind::LeftCusp: {
                if (e.slot < 0 || e.slot > n)
                    throw ValidationError("left cusp at bad slot, " + where(e, col));
                int a = next_id++, b = next_id++;
                active.insert(active.begin() + e.slot, {a, b});
                cusps.push_back(CuspRec{col, a, b, true, e.slot});
                break;
            }
            case EventKind::RightCusp: {
                if (e.slot < 0 || e.slot + 1 > n - 1)
                    throw ValidationError("right cusp at bad slot, " + where(e, col));
                int u = active[e.slot], l = active[e.slot + 1];
                cusps.push_back(CuspRec{col, u, l, false, e.slot});
                active.erase(active.begin() + e.slot, active.begin() + e.slot + 2);
                break;
            }
            case EventKind::Crossing: {
                if (e.slot < 0 || e.slot + 1 > n - 1)
                    throw ValidationError("crossing at bad slot, " + where(e, col));
                crossings.push_back(CrossRec{col, active[e.slot], active[e.slot + 1]});
                std::swap(active[e.slot], active[e.slot + 1]);
                break;
            }
            case EventKind::HandlePass: {
                if (e.slot < 0 || e.slot > n - 1)
                    throw ValidationError("handle pass at bad slot, " + where(e, col));
                if (std::find(f.handles.begin(), f.handles.end(), e.handle) == f.handles.end())
                    throw ValidationError("pass through undeclared handle '" + e.handle + "', " +
                                          where(e, col));
                passes.push_back(PassRec{col, active[e.slot], e.handle, e.dir});
                break;
            }
        }
    }
    if (!active.empty())
        throw ValidationError(std::to_string(active.size()) + " strand(s) never close up");

    // Pass 2: trace closed curves.  Every strand starts at a left cusp
    // and ends at a right cusp; follow the joins.
    std::vector<int> left_peer(next_id, -1), right_peer(next_id, -1);
    std::vector<std::size_t> birth_cusp(next_id, 0);
    for (std::size_t ci = 0; ci < cusps.size(); ++ci) {
        const CuspRec& c = cusps[ci];
        if (c.left) {
            left_peer[c.upper] = c.lower;
            left_peer[c.lower] = c.upper;
            birth_cusp[c.upper] = ci;
            birth_cusp[c.lower] = ci;
        } else {
            right_peer[c.upper] = c.lower;
            right_peer[c.lower] = c.upper;
        }
    }

    std::vector<int> comp_of(next_id, -1);
    std::vector<int> dir(next_id, 0);  // +1 = traced left-to-right
    std::vector<int> seeds;            // minimal strand id per component
    for (int s = 0; s < next_id; ++s) {
        if (comp_of[s] >= 0) continue;
        int c = static_cast<int>(seeds.size());
        seeds.push_back(s);
        int cur = s, d = 1;
        do {
            comp_of[cur] = c;
            dir[cur] = d;
            cur = d > 0 ? right_peer[cur] : left_peer[cur];
            d = -d;
        } while (cur != s);
    }
    const std::size_t ncomp = seeds.size();

    if (ncomp != f.blocks.size()) {
        std::ostringstream os;
        os << "file declares " << f.blocks.size() << " knot block(s) but the strands close into "
           << ncomp << " component(s)";
        throw ValidationError(os.str());
    }

    // Components are already ordered by earliest left cusp: strand ids
    // grow with the column index, and a component's smallest id is the
    // upper strand of its earliest cusp.
    names_.resize(ncomp);
    std::vector<int> sign(ncomp, 1);
    seed_column_.resize(ncomp);
    seed_slot_.resize(ncomp);
    seed_dir_.resize(ncomp);
    for (std::size_t c = 0; c < ncomp; ++c) {
        names_[c] = f.blocks[c].name;
        sign[c] = f.blocks[c].reversed ? -1 : 1;
        const CuspRec& seed = cusps[birth_cusp[seeds[c]]];
        seed_column_[c] = seed.column;
        seed_slot_[c] = seed.slot;
        seed_dir_[c] = sign[c];
    }

    auto effdir = [&](int strand) { return dir[strand] * sign[comp_of[strand]]; };

    inv_.assign(ncomp, ClassicalInvariants{});
    for (const CuspRec& c : cusps) {
        std::size_t comp = comp_of[c.upper];
        ClassicalInvariants& iv = inv_[comp];
        iv.cusps += 1;
        bool up = c.left ? effdir(c.upper) > 0 : effdir(c.upper) < 0;
        (up ? iv.up_cusps : iv.down_cusps) += 1;
    }
    cross_.assign(ncomp, std::vector<Int>(ncomp, Int(0)));
    for (const CrossRec& x : crossings) {
        int sgn = effdir(x.upper_in) == effdir(x.lower_in) ? 1 : -1;
        int ca = comp_of[x.upper_in], cb = comp_of[x.lower_in];
        if (ca == cb) {
            inv_[ca].writhe += sgn;
        } else {
            cross_[ca][cb] += sgn;
            cross_[cb][ca] += sgn;
        }
    }
    for (std::size_t c = 0; c < ncomp; ++c) {
        ClassicalInvariants& iv = inv_[c];
        iv.tb = Int(iv.writhe) - Int(iv.cusps) / 2;
        iv.rot = (Int(iv.down_cusps) - Int(iv.up_cusps)) / 2;
    }

    // Handle words along the canonical traversal, inverted for reversed
    // components so the word starts at the seed cusp either way.
    std::vector<std::vector<const PassRec*>> by_strand(next_id);
    for (const PassRec& p : passes) by_strand[p.strand].push_back(&p);
    word_.assign(ncomp, words::Word{});
    for (std::size_t c = 0; c < ncomp; ++c) {
        std::vector<words::Letter> letters;
        int cur = seeds[c];
        do {
            const auto& list = by_strand[cur];
            if (dir[cur] > 0) {
                for (const PassRec* p : list) letters.push_back(words::Letter{p->handle, p->dir});
            } else {
                for (auto it = list.rbegin(); it != list.rend(); ++it)
                    letters.push_back(words::Letter{(*it)->handle, -(*it)->dir});
            }
            cur = dir[cur] > 0 ? right_peer[cur] : left_peer[cur];
        } while (cur != seeds[c]);
        words::Word w(std::move(letters));
        if (sign[c] < 0) w = w.inverse();
        word_[c] = words::free_reduce(w);
    }
    nullh_.assign(ncomp, true);
    for (std::size_t c = 0; c < ncomp; ++c)
        for (const std::string& h : f.handles)
            if (word_[c].exponent_sum(h) != 0) nullh_[c] = false;
}

bool Analysis::linking_defined(std::size_t a, std::size_t b) const {
    return nullh_.at(a) && nullh_.at(b);
}

Int Analysis::linking(std::size_t a, std::size_t b) const {
    if (a == b) throw ValidationError("linking of a component with itself is its framing");
    if (!linking_defined(a, b))
        throw UndefinedLinking("linking(" + names_[a] + ", " + names_[b] +
                               ") is undefined: a component is not null-homologous");
    if (cross_[a][b] % 2 != 0)
        throw ValidationError("odd crossing count between null-homologous components");
    return cross_[a][b] / 2;
}

std::size_t Analysis::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw ValidationError("no component named '" + name + "'");
}

ClassicalInvariants classical_invariants(const FrontDiagram& f, std::size_t comp) {
    Analysis a(f);
    if (comp >= a.component_count()) throw ValidationError("component index out of range");
    return a.invariants(comp);
}

ClassicalInvariants classical_invariants(const FrontDiagram& f, const std::string& name) {
    Analysis a(f);
    return a.invariants(a.index_of(name));
}

Int linking(const FrontDiagram& f, std::size_t a, std::size_t b) {
    Analysis an(f);
    if (a >= an.component_count() || b >= an.component_count())
        throw ValidationError("component index out of range");
    return an.linking(a, b);
}

words::Word handle_word(const FrontDiagram& f, std::size_t comp) {
    Analysis a(f);
    if (comp >= a.component_count()) throw ValidationError("component index out of range");
    return a.handle_word(comp);
}

FrontDiagram stabilize_front(const FrontDiagram& f, std::size_t comp, int sign) {
    if (sign != 1 && sign != -1) throw ValidationError("stabilization sign must be +-1");
    Analysis a(f);
    if (comp >= a.component_count()) throw ValidationError("component index out of range");

    const int s = a.seed_slot_[comp];
    const int eff = a.seed_dir_[comp];
    // Zigzag insertion right after the seed cusp.  Which of the two
    // mirror patterns adds a down-down pair (rot + 1) depends on the
    // traversal direction of the seed strand.
    Event lc, rc;
    lc.kind = EventKind::LeftCusp;
    rc.kind = EventKind::RightCusp;
    if (sign * eff > 0) {
        lc.slot = s + 1;
        rc.slot = s;
    } else {
        lc.slot = s;
        rc.slot = s + 1;
    }

    FrontDiagram g = f;
    std::size_t global = a.seed_column_[comp];
    for (KnotBlock& b : g.blocks) {
        if (global < b.events.size()) {
            b.events.insert(b.events.begin() + global + 1, {lc, rc});
            return g;
        }
        global -= b.events.size();
    }
    throw ValidationError("seed column out of range");  // unreachable
}

page::PageDiagram compile_to_page(const FrontDiagram& f) {
    Analysis a(f);
    std::vector<page::Circle> circles;
    for (std::size_t c = 0; c < a.component_count(); ++c) {
        const ClassicalInvariants& iv = a.invariants(c);
        circles.push_back(page::Circle{a.component_names()[c], a.handle_word(c), iv.tb, iv.rot, 0});
    }
    std::map<std::pair<std::size_t, std::size_t>, Int> linking;
    for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j)
            if (a.linking_defined(i, j) && a.linking(i, j) != 0) linking[{i, j}] = a.linking(i, j);
    return page::PageDiagram::make(f.handles, std::move(circles), std::move(linking), "front");
}

twist::OpenBook compile_to_book(const FrontDiagram& f) {
    return twist::make_book(compile_to_page(f), f.twist_tokens);
}

}  // namespace front
}  // namespace obk
