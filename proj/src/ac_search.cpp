#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "obk/errors.hpp"
#include "obk/words.hpp"

// Breadth-first search over balanced presentations for a move sequence
// reaching the empty presentation.  Nodes are concrete presentations
// (traces stay replayable); duplicates are folded by a canonical key
// that sorts generators and relations.  Expansion order is fixed, so the
// outcome is deterministic for fixed limits.

namespace obk {
namespace words {

namespace {

std::string canonical_key(const Presentation& p) {
    std::vector<std::string> gens = p.generators;
    std::sort(gens.begin(), gens.end());
    std::vector<Word> rels = p.relations;
    std::sort(rels.begin(), rels.end());
    std::ostringstream os;
    for (const auto& g : gens) os << g << ',';
    os << '|';
    for (const auto& r : rels) os << r.to_string() << ',';
    return os.str();
}

std::string fresh_gen_name(const Presentation& p) {
    for (int k = 1;; ++k) {
        std::string name = "t" + std::to_string(k);
        if (!p.has_generator(name)) return name;
    }
}

struct Node {
    Presentation pres;
    std::size_t parent;
    PresMove via;
    int depth;
};

// Enumerate candidate moves in a fixed order: removals first, then the
// relation-mixing moves, conjugations, and finally the growing moves.
std::vector<PresMove> candidate_moves(const Presentation& p, const SearchLimits& lim) {
    std::vector<PresMove> out;
    const std::size_t n = p.relations.size();

    for (const std::string& g : p.generators) {
        PresMove m;
        m.kind = MoveKind::AC4Remove;
        m.gen = g;
        out.push_back(m);
    }
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < n; ++s) {
            if (t == s) continue;
            for (int e : {1, -1}) {
                PresMove m;
                m.kind = MoveKind::AC3;
                m.target = t;
                m.source = s;
                m.exp = e;
                out.push_back(m);
            }
        }
    for (std::size_t i = 0; i < n; ++i) {
        PresMove m;
        m.kind = MoveKind::AC1;
        m.index = i;
        out.push_back(m);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (const std::string& g : p.generators)
            for (int e : {1, -1}) {
                PresMove m;
                m.kind = MoveKind::AC2;
                m.index = i;
                m.gen = g;
                m.exp = e;
                out.push_back(m);
            }
    {
        PresMove m;
        m.kind = MoveKind::AC4Add;
        m.gen = fresh_gen_name(p);
        out.push_back(m);
    }
    if (lim.extended) {
        for (const std::string& g : p.generators) {
            for (const std::string& h : p.generators) {
                if (g == h) continue;
                for (int e : {1, -1}) {
                    PresMove m;
                    m.kind = MoveKind::ExtGenMult;
                    m.gen = g;
                    m.by = h;
                    m.exp = e;
                    out.push_back(m);
                }
            }
            PresMove m;
            m.kind = MoveKind::ExtGenInv;
            m.gen = g;
            out.push_back(m);
        }
    }
    return out;
}

bool within_length(const Presentation& p, std::size_t max_len) {
    return std::all_of(p.relations.begin(), p.relations.end(),
                       [&](const Word& w) { return w.size() <= max_len; });
}

}  // namespace

SearchOutcome ac_search(const Presentation& p, const SearchLimits& limits) {
    if (!p.balanced()) throw UnbalancedInput("search requires a balanced presentation");
    if (!within_length(p, limits.max_relation_length))
        throw IllegalMove("initial relations exceed the length limit");

    MoveOptions opts;
    opts.extended = limits.extended;

    SearchOutcome res;
    std::vector<Node> nodes;
    nodes.push_back(Node{p, 0, PresMove{}, 0});
    std::unordered_set<std::string> seen{canonical_key(p)};

    auto make_trace = [&](std::size_t leaf) {
        MoveTrace t;
        t.initial = p;
        t.final = nodes[leaf].pres;
        std::vector<PresMove> rev;
        for (std::size_t i = leaf; i != 0; i = nodes[i].parent) rev.push_back(nodes[i].via);
        t.steps.assign(rev.rbegin(), rev.rend());
        return t;
    };

    if (p.generators.empty() && p.relations.empty()) {
        res.status = SearchStatus::Found;
        res.trace = make_trace(0);
        res.states_explored = 1;
        return res;
    }

    std::vector<std::size_t> frontier{0};
    res.states_explored = 1;
    for (int depth = 0; depth < limits.max_depth && !frontier.empty(); ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t id : frontier) {
            // Copy: nodes may reallocate while we expand.
            const Presentation cur = nodes[id].pres;
            for (const PresMove& m : candidate_moves(cur, limits)) {
                // The budget is a hard ceiling on distinct states, so
                // refuse to create one once the table is full.
                if (seen.size() >= limits.max_states) {
                    res.status = SearchStatus::StateLimit;
                    return res;
                }
                Presentation q;
                try {
                    q = apply_pres_move(cur, m, opts);
                } catch (const IllegalMove&) {
                    continue;
                }
                if (!within_length(q, limits.max_relation_length)) continue;
                if (!seen.insert(canonical_key(q)).second) continue;
                nodes.push_back(Node{std::move(q), id, m, depth + 1});
                ++res.states_explored;
                const Node& added = nodes.back();
                res.depth_reached = depth + 1;
                if (added.pres.generators.empty() && added.pres.relations.empty()) {
                    res.status = SearchStatus::Found;
                    res.trace = make_trace(nodes.size() - 1);
                    return res;
                }
                next.push_back(nodes.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    res.status = SearchStatus::Exhausted;
    res.depth_reached = limits.max_depth;
    return res;
}

}  // namespace words
}  // namespace obk
