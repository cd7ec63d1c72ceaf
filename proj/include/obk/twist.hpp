#pragma once

// Open books: a page plus a monodromy word of Dehn twists along
// attaching circles, together with the homological machinery that turns
// one into the homology of the resulting closed 5-manifold (via the
// mapping torus and the boundary filling).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "obk/page.hpp"
#include "obk/zalg.hpp"

namespace obk {
namespace twist {

// One Dehn twist along a page circle; exp = -1 is the inverse twist.
// Letters apply in storage order: monodromy[0] acts first.
struct TwistLetter {
    std::size_t circle = 0;
    int exp = 1;

    bool operator==(const TwistLetter& o) const { return circle == o.circle && exp == o.exp; }
};

struct OpenBook {
    page::PageDiagram page;
    std::vector<TwistLetter> monodromy;

    bool trivial_monodromy() const { return monodromy.empty(); }
};

// Validates that every twist sits on a usable circle (tb = -1, clear of
// the 1-handles) and that exponents are +-1.
OpenBook make_book(page::PageDiagram page, std::vector<TwistLetter> monodromy);

// Resolve a monodromy word given by circle names ("K1", "K2^-1", ...).
OpenBook make_book(page::PageDiagram page, const std::vector<std::string>& tokens);

// Action of one (+-) Dehn twist along circle i on the free module spanned
// by the attaching circles: u |-> u + <row_i(Q), u> e_i.  The framing
// Q_ii = -2 makes this an involution, so both signs give the same matrix.
zalg::IntMatrix twist_matrix(const zalg::IntMatrix& framing, std::size_t i, int sign = 1);

// Matrix of the full monodromy word (the letter applied last sits
// leftmost in the product).
zalg::IntMatrix monodromy_action(const OpenBook& b);

// Correction matrix C tracking how the monodromy drags the meridian
// discs: column i is the accumulated class picked up by disc i.
zalg::IntMatrix relative_correction(const OpenBook& b);

struct MappingTorusHomology {
    zalg::AbelianGroup h1, h2, h3;
};

MappingTorusHomology mapping_torus_homology(const OpenBook& b);

enum class Spin { Yes, No, Unknown };

const char* spin_name(Spin s);

struct HomologyProfile {
    // h[0] .. h[5]
    zalg::AbelianGroup h[6];
    Spin spin = Spin::Unknown;

    bool operator==(const HomologyProfile& o) const {
        for (int i = 0; i < 6; ++i)
            if (!(h[i] == o.h[i])) return false;
        return spin == o.spin;
    }
};

// Homology of the closed 5-manifold supported by the open book.
// Requires a page without 1-handles.
HomologyProfile open_book_homology(const OpenBook& b);

// Same page, monodromy word repeated twice.
OpenBook double_branched_cover(const OpenBook& b);

// Boundary connected sum of pages, concatenated monodromies.  Circle and
// handle names must not collide; empty books are refused.
OpenBook book_connected_sum(const OpenBook& a, const OpenBook& b);

// Add an unknotted, unlinked tb = -1 circle and one positive twist along
// it (appended last).  Preserves the homology profile.
OpenBook stabilize_book(const OpenBook& b);

}  // namespace twist
}  // namespace obk
