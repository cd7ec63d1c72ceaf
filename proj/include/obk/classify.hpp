#pragma once

// Recognition of the closed contact 5-manifolds supported by trivial
// monodromy diagrams (connected sums of S2-bundles over S3... over S^2),
// decomposition of homology profiles into Barden building blocks, the
// Z_k + Z_k family detector, and a replay checker for stable-equivalence
// certificates built from diagram moves.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obk/moves.hpp"
#include "obk/twist.hpp"

namespace obk {
namespace classify {

enum class ContactKind { Sphere, SBundleSum, Unknown };

const char* contact_kind_name(ContactKind k);

// A named contact 5-manifold: the standard sphere, or a connected sum of
// m sphere bundles carrying the contact structure whose first Chern class
// has divisibility d (one bundle is twisted exactly when d is odd).
struct ContactClass {
    ContactKind kind = ContactKind::Unknown;
    std::size_t m = 0;  // sphere-bundle summands
    Int d = 0;          // gcd of the rotation vector, reported nonnegative
    std::string diffeo_name;
    std::string contact_name;

    bool operator==(const ContactClass& o) const {
        return kind == o.kind && m == o.m && d == o.d;
    }
    bool operator!=(const ContactClass& o) const { return !(*this == o); }
};

// Classify the closed manifold of a 1-handle-free page with the empty
// monodromy word.  Throws UnsupportedPage when 1-handles are present.
ContactClass classify_trivial_monodromy(const page::PageDiagram& p);

// Connected-sum decomposition of a simply connected closed 5-manifold
// given by its H2 and spin flag: free summands are sphere bundles (one
// twisted when tilde), torsion must split as A + A and contributes one
// M_q block per prime-power factor q of A.
struct BardenDecomposition {
    std::size_t free_summands = 0;
    std::vector<Int> mk_factors;  // prime powers, ascending
    bool tilde = false;

    std::string to_string() const;

    bool operator==(const BardenDecomposition& o) const {
        return free_summands == o.free_summands && mk_factors == o.mk_factors &&
               tilde == o.tilde;
    }
};

// Throws NotRealizable when the torsion does not split as A + A, or when
// a non-spin profile has no free summand to carry the twisted bundle.
BardenDecomposition barden_decompose(const zalg::AbelianGroup& h2, bool spin);

// Rebuild (H2, spin) from a decomposition; inverse of barden_decompose on
// its image.
std::pair<zalg::AbelianGroup, bool> barden_reassemble(const BardenDecomposition& d);

// Returns k when the book's closed manifold has H1 = 0, H2 = Z/k + Z/k
// and spin = yes (k = 1 flags a standard-sphere candidate), nothing
// otherwise.  Homology matching only; no contact certificate.
std::optional<Int> identify_Nk(const twist::OpenBook& b);

// One step of a stable-equivalence certificate: a diagram move applied to
// the left (1) or right (2) book.
struct SidedMove {
    int side = 1;
    moves::DiagMove move;
};

struct StableEquivalenceReport {
    bool accepted = false;
    std::size_t added_left = 0;   // AddSummand steps consumed on the left
    std::size_t added_right = 0;  // ... and on the right
    bool rank_checked = false;    // both sides 1-handle free at the start
    bool rank_identity = false;   // added_left - added_right == rank difference
    std::vector<std::pair<std::string, std::string>> circle_match;
    std::vector<std::pair<std::string, std::string>> handle_match;
    std::string reason;  // first obstruction when rejected
};

// Replays the trace on both sides, then accepts iff the final diagrams
// agree up to renaming of circles and handles and per-circle orientation
// flips (the stabilization ledger sigma is ignored), and - when both
// input books are 1-handle free - the summand counts satisfy
// added_left - added_right = rank gap of the inputs.  Never throws for
// certificate defects; the report carries the reason.
StableEquivalenceReport verify_stable_equivalence(const twist::OpenBook& left,
                                                  const twist::OpenBook& right,
                                                  const std::vector<SidedMove>& trace);

}  // namespace classify
}  // namespace obk
