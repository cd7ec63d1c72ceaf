#include "obk/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "obk/errors.hpp"

namespace obk {
namespace classify {

namespace {

using page::PageDiagram;
using twist::OpenBook;
using words::Word;

// "0" -> U+2080 and so on; d is always nonnegative here.
std::string subscript(const Int& n) {
    static const char* digits[10] = {"₀", "₁", "₂", "₃", "₄",
                                     "₅", "₆", "₇", "₈", "₉"};
    std::string plain = n.str();
    std::string out;
    for (char c : plain)
        if (c >= '0' && c <= '9') out += digits[c - '0'];
    return out;
}

constexpr const char* kSphereName = "S⁵";
constexpr const char* kProduct = "S²×S³";
constexpr const char* kTwisted = "S²×̃S³";

void fill_names(ContactClass& c) {
    if (c.kind == ContactKind::Sphere) {
        c.diffeo_name = kSphereName;
        c.contact_name = "ξ_std";
        return;
    }
    if (c.kind != ContactKind::SBundleSum) return;
    std::ostringstream os;
    bool spin = (c.d % 2 == 0);
    if (c.m == 1) {
        os << (spin ? kProduct : kTwisted);
    } else if (spin) {
        os << "#_" << c.m << ' ' << kProduct;
    } else {
        os << "#_" << (c.m - 1) << '(' << kProduct << ") # " << kTwisted;
    }
    c.diffeo_name = os.str();
    c.contact_name = "ξ" + subscript(c.d);
}

std::vector<Int> prime_power_factors(Int n) {
    std::vector<Int> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        Int q = 1;
        while (n % p == 0) {
            q *= p;
            n /= p;
        }
        out.push_back(q);
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

const char* contact_kind_name(ContactKind k) {
    switch (k) {
        case ContactKind::Sphere: return "sphere";
        case ContactKind::SBundleSum: return "sbundle-sum";
        case ContactKind::Unknown: return "unknown";
    }
    return "unknown";
}

ContactClass classify_trivial_monodromy(const PageDiagram& p) {
    if (!p.handles().empty())
        throw UnsupportedPage("classification needs a page without 1-handles");
    ContactClass c;
    if (p.circles().empty()) {
        c.kind = ContactKind::Sphere;
        fill_names(c);
        return c;
    }
    c.kind = ContactKind::SBundleSum;
    c.m = p.size();
    std::vector<Int> rots;
    rots.reserve(p.size());
    for (const auto& circ : p.circles()) rots.push_back(circ.rot);
    std::vector<Int> orbit = zalg::gl_orbit_invariant(rots);
    c.d = orbit.empty() ? Int(0) : orbit.front();
    fill_names(c);
    return c;
}

std::string BardenDecomposition::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " # ";
        first = false;
    };
    for (std::size_t i = 0; i < free_summands; ++i) {
        sep();
        os << ((tilde && i == 0) ? kTwisted : kProduct);
    }
    for (const Int& q : mk_factors) {
        sep();
        os << "M_" << q;
    }
    if (first) os << kSphereName;
    return os.str();
}

BardenDecomposition barden_decompose(const zalg::AbelianGroup& h2, bool spin) {
    BardenDecomposition d;
    d.free_summands = h2.free_rank;
    d.tilde = !spin;
    if (!spin && h2.free_rank == 0)
        throw NotRealizable("a non-spin profile needs a free summand for the twisted bundle");
    const auto& t = h2.torsion;
    if (t.size() % 2 != 0)
        throw NotRealizable("torsion does not split as A + A: odd number of factors");
    for (std::size_t i = 0; i < t.size(); i += 2) {
        if (t[i] != t[i + 1])
            throw NotRealizable("torsion does not split as A + A: unpaired factor " +
                                t[i].str());
        for (const Int& q : prime_power_factors(t[i])) d.mk_factors.push_back(q);
    }
    std::sort(d.mk_factors.begin(), d.mk_factors.end());
    return d;
}

std::pair<zalg::AbelianGroup, bool> barden_reassemble(const BardenDecomposition& d) {
    std::size_t n = d.mk_factors.size() * 2;
    zalg::IntMatrix diag(n, n);
    for (std::size_t i = 0; i < d.mk_factors.size(); ++i) {
        diag.at(2 * i, 2 * i) = d.mk_factors[i];
        diag.at(2 * i + 1, 2 * i + 1) = d.mk_factors[i];
    }
    zalg::AbelianGroup g = zalg::cokernel(diag);
    g.free_rank += d.free_summands;
    return {g, !d.tilde};
}

std::optional<Int> identify_Nk(const twist::OpenBook& b) {
    twist::HomologyProfile prof = twist::open_book_homology(b);
    if (prof.spin != twist::Spin::Yes) return std::nullopt;
    if (!prof.h[1].is_trivial()) return std::nullopt;
    const zalg::AbelianGroup& h2 = prof.h[2];
    if (h2.free_rank != 0) return std::nullopt;
    if (h2.torsion.empty()) return Int(1);
    if (h2.torsion.size() != 2 || h2.torsion[0] != h2.torsion[1]) return std::nullopt;
    return h2.torsion[0];
}

namespace {

Word rename_word(const Word& w, const std::map<std::string, std::string>& gen_map) {
    std::vector<words::Letter> out;
    out.reserve(w.size());
    for (const auto& l : w.letters()) out.push_back({gen_map.at(l.gen), l.exp});
    return Word(std::move(out));
}

bool match_circles(const PageDiagram& a, const PageDiagram& b,
                   const std::map<std::string, std::string>& gen_map,
                   std::vector<std::size_t>& asg) {
    std::size_t n = a.size();
    std::vector<bool> used(n, false);
    asg.assign(n, 0);

    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == n) {
            // Full assignment: audit the linking entries.
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = x + 1; y < n; ++y) {
                    bool da = a.linking_defined(x, y);
                    bool db = b.linking_defined(asg[x], asg[y]);
                    if (da != db) return false;
                    if (da && a.linking(x, y) != b.linking(asg[x], asg[y])) return false;
                }
            return true;
        }
        const page::Circle& ca = a.circles()[i];
        Word wa = rename_word(ca.word, gen_map);
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const page::Circle& cb = b.circles()[j];
            if (ca.tb != cb.tb) continue;
            bool flips[2];
            std::size_t nflips = 0;
            if (ca.rot == cb.rot) flips[nflips++] = false;
            if (ca.rot == -cb.rot) flips[nflips++] = true;
            for (std::size_t f = 0; f < nflips; ++f) {
                const Word target = flips[f] ? wa.inverse() : wa;
                if (target != cb.word) continue;
                used[j] = true;
                asg[i] = j;
                if (place(i + 1)) return true;
                used[j] = false;
            }
        }
        return false;
    };
    return place(0);
}

}  // namespace

StableEquivalenceReport verify_stable_equivalence(const twist::OpenBook& left,
                                                  const twist::OpenBook& right,
                                                  const std::vector<SidedMove>& trace) {
    StableEquivalenceReport rep;
    if (!left.trivial_monodromy() || !right.trivial_monodromy()) {
        rep.reason = "both books must have trivial monodromy";
        return rep;
    }
    twist::OpenBook sides[2] = {left, right};
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const SidedMove& sm = trace[k];
        if (sm.side != 1 && sm.side != 2) {
            rep.reason = "step " + std::to_string(k + 1) + ": side must be 1 or 2";
            return rep;
        }
        try {
            sides[sm.side - 1] = moves::apply_move(sides[sm.side - 1], sm.move);
        } catch (const Error& e) {
            rep.reason = "step " + std::to_string(k + 1) + " (" + sm.move.to_string() +
                         "): " + e.what();
            return rep;
        }
        if (sm.move.kind == moves::DiagMoveKind::AddSummand)
            ++(sm.side == 1 ? rep.added_left : rep.added_right);
    }

    if (left.page.handles().empty() && right.page.handles().empty()) {
        rep.rank_checked = true;
        long long gap = static_cast<long long>(right.page.size()) -
                        static_cast<long long>(left.page.size());
        rep.rank_identity = static_cast<long long>(rep.added_left) -
                                static_cast<long long>(rep.added_right) ==
                            gap;
    }

    const PageDiagram& a = sides[0].page;
    const PageDiagram& b = sides[1].page;
    if (a.handles().size() != b.handles().size()) {
        rep.reason = "final handle counts differ";
        return rep;
    }
    if (a.size() != b.size()) {
        rep.reason = "final circle counts differ";
        return rep;
    }

    std::vector<std::size_t> hperm(b.handles().size());
    std::iota(hperm.begin(), hperm.end(), std::size_t{0});
    bool matched = false;
    std::vector<std::size_t> asg;
    std::vector<std::size_t> winning_hperm;
    do {
        std::map<std::string, std::string> gen_map;
        for (std::size_t i = 0; i < hperm.size(); ++i)
            gen_map[a.handles()[i]] = b.handles()[hperm[i]];
        if (match_circles(a, b, gen_map, asg)) {
            matched = true;
            winning_hperm = hperm;
            break;
        }
    } while (std::next_permutation(hperm.begin(), hperm.end()));

    if (!matched) {
        rep.reason = "final diagrams do not match under any renaming and flips";
        return rep;
    }
    for (std::size_t i = 0; i < winning_hperm.size(); ++i)
        rep.handle_match.push_back({a.handles()[i], b.handles()[winning_hperm[i]]});
    for (std::size_t i = 0; i < a.size(); ++i)
        rep.circle_match.push_back({a.circles()[i].name, b.circles()[asg[i]].name});
    if (rep.rank_checked && !rep.rank_identity) {
        rep.reason = "summand counts violate the rank identity";
        return rep;
    }
    rep.accepted = true;
    return rep;
}

}  // namespace classify
}  // namespace obk
