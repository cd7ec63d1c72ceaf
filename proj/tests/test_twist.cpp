#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obk/errors.hpp"
#include "obk/front.hpp"
#include "obk/twist.hpp"
#include "helpers.hpp"

using namespace obk;
using namespace obk::twist;
using zalg::IntMatrix;
using zalg::AbelianGroup;

namespace {

std::string sigma_text(int k) {
    std::string s = "knot K1:\n  l0\nknot K2 orient -:\n  l2";
    for (int i = 0; i < 2 * k; ++i) s += " x1";
    s += " r2 r0\ntwists: K2 K1 K2 K1\n";
    return s;
}

OpenBook sigma_book(int k) { return front::compile_to_book(front::parse_front(sigma_text(k))); }

OpenBook disc_bundle_book(int taus) {
    page::PageDiagram p = page::PageDiagram::make({}, {page::Circle{"K", {}, -1, 0, 0}}, {});
    std::vector<TwistLetter> w(taus, TwistLetter{0, 1});
    return make_book(std::move(p), std::move(w));
}

IntMatrix sigma_q(long long k) { return IntMatrix::from_rows({{-2, k}, {k, -2}}); }

}  // namespace

TEST_CASE("twist matrices for the linked pair") {
    for (long long k = 1; k <= 10; ++k) {
        IntMatrix q = sigma_q(k);
        CHECK(twist_matrix(q, 0) == IntMatrix::from_rows({{-1, k}, {0, 1}}));
        CHECK(twist_matrix(q, 1) == IntMatrix::from_rows({{1, 0}, {k, -1}}));
        // The action is an involution, so both signs agree.
        CHECK(twist_matrix(q, 0, -1) == twist_matrix(q, 0, 1));
        CHECK((twist_matrix(q, 0) * twist_matrix(q, 0)).is_identity());
        CHECK((twist_matrix(q, 1) * twist_matrix(q, 1)).is_identity());
        // Congruence invariance of the intersection form under a twist.
        IntMatrix t = twist_matrix(q, 0);
        CHECK(t.transpose() * q * t == q);
    }
    CHECK_THROWS_AS(twist_matrix(IntMatrix::from_rows({{-1}}), 0), ValidationError);
}

TEST_CASE("monodromy action of the squared pair word") {
    for (long long k = 1; k <= 10; ++k) {
        OpenBook b = sigma_book(static_cast<int>(k));
        IntMatrix m = monodromy_action(b);
        Int kk = k;
        IntMatrix want(2, 2);
        want.at(0, 0) = kk * kk * kk * kk - 3 * kk * kk + 1;
        want.at(0, 1) = 2 * kk - kk * kk * kk;
        want.at(1, 0) = -2 * kk + kk * kk * kk;
        want.at(1, 1) = -kk * kk + 1;
        CHECK(m == want);
    }
}

TEST_CASE("monodromy word order: last letter acts leftmost") {
    // Book with two twists: first along K1, then along K2.
    page::PageDiagram p = page::PageDiagram::make(
        {}, {page::Circle{"K1", {}, -1, 0, 0}, page::Circle{"K2", {}, -1, 0, 0}},
        {{{0, 1}, Int(3)}});
    OpenBook b = make_book(p, std::vector<std::string>{"K1", "K2"});
    IntMatrix q = sigma_q(3);
    CHECK(monodromy_action(b) == twist_matrix(q, 1) * twist_matrix(q, 0));
}

TEST_CASE("inverse twists cancel in the action") {
    page::PageDiagram p = front::compile_to_page(front::parse_front(sigma_text(3)));
    OpenBook b = make_book(p, std::vector<std::string>{"K1", "K2", "K2^-1", "K1^-1"});
    CHECK(monodromy_action(b).is_identity());
}

TEST_CASE("relative correction for the squared pair word at k = 2") {
    OpenBook b = sigma_book(2);
    CHECK(relative_correction(b) == IntMatrix::from_rows({{4, 6}, {2, 4}}));

    // Prefix orbit: after the first three letters the first disc has
    // collected class (1, 2).
    OpenBook prefix = b;
    prefix.monodromy.resize(3);
    IntMatrix c = relative_correction(prefix);
    CHECK(c.at(0, 0) == 1);
    CHECK(c.at(1, 0) == 2);
}

TEST_CASE("relative correction composition law") {
    // Splitting the word w = uv must satisfy C_w = psi_v C_u + C_v.
    OpenBook b = sigma_book(3);
    for (std::size_t cut = 0; cut <= b.monodromy.size(); ++cut) {
        OpenBook u = b, v = b;
        u.monodromy.assign(b.monodromy.begin(), b.monodromy.begin() + cut);
        v.monodromy.assign(b.monodromy.begin() + cut, b.monodromy.end());
        IntMatrix lhs = relative_correction(b);
        IntMatrix rhs = monodromy_action(v) * relative_correction(u);
        IntMatrix cv = relative_correction(v);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(lhs.at(i, j) == rhs.at(i, j) + cv.at(i, j));
    }
}

TEST_CASE("a twist then its inverse leaves no correction trace in homology") {
    page::PageDiagram p = front::compile_to_page(front::parse_front(sigma_text(2)));
    OpenBook id_word = make_book(p, std::vector<std::string>{"K1", "K1^-1"});
    OpenBook empty_word = make_book(p, std::vector<std::string>{});
    CHECK(open_book_homology(id_word).h[2] == open_book_homology(empty_word).h[2]);
    CHECK(open_book_homology(id_word).h[3] == open_book_homology(empty_word).h[3]);
}

TEST_CASE("mapping torus homology") {
    // k = 2: psi - id = [[4, -4], [4, -4]], cokernel Z + Z/4.
    OpenBook b = sigma_book(2);
    MappingTorusHomology h = mapping_torus_homology(b);
    CHECK(h.h1 == AbelianGroup{1, {}});
    CHECK(h.h2 == AbelianGroup{1, {Int(4)}});
    CHECK(h.h3 == AbelianGroup{1, {}});

    for (long long k : {1, 3, 4, 5}) {
        MappingTorusHomology hk = mapping_torus_homology(sigma_book(static_cast<int>(k)));
        CHECK(hk.h2.is_finite());
        CHECK(hk.h2.torsion_order() == k * k * (k * k - 4) * (k < 2 ? -1 : 1));
        CHECK(hk.h3.is_trivial());
    }
}

TEST_CASE("closed manifold homology of the linked-pair books") {
    for (long long k = 1; k <= 6; ++k) {
        HomologyProfile hp = open_book_homology(sigma_book(static_cast<int>(k)));
        CHECK(hp.h[0] == AbelianGroup{1, {}});
        CHECK(hp.h[1].is_trivial());
        if (k == 1)
            CHECK(hp.h[2].is_trivial());
        else
            CHECK(hp.h[2] == AbelianGroup{0, {Int(k), Int(k)}});
        CHECK(hp.h[3].is_trivial());
        CHECK(hp.h[4].is_trivial());
        CHECK(hp.h[5] == AbelianGroup{1, {}});
        CHECK(hp.spin == Spin::Yes);
    }
}

TEST_CASE("disc bundle books") {
    // One twist gives the 5-sphere (this is why stabilization is safe);
    // the squared twist has free H2 and H3 of rank one.
    HomologyProfile h1 = open_book_homology(disc_bundle_book(1));
    CHECK(h1.h[2].is_trivial());
    CHECK(h1.h[3].is_trivial());

    HomologyProfile h2 = open_book_homology(disc_bundle_book(2));
    CHECK(h2.h[0] == AbelianGroup{1, {}});
    CHECK(h2.h[1].is_trivial());
    CHECK(h2.h[2] == AbelianGroup{1, {}});
    CHECK(h2.h[3] == AbelianGroup{1, {}});
    CHECK(h2.h[4].is_trivial());
    CHECK(h2.h[5] == AbelianGroup{1, {}});
}

TEST_CASE("empty book is the 5-sphere") {
    OpenBook b = make_book(page::PageDiagram{}, std::vector<TwistLetter>{});
    HomologyProfile h = open_book_homology(b);
    CHECK(h.h[0] == AbelianGroup{1, {}});
    for (int i = 1; i <= 4; ++i) CHECK(h.h[i].is_trivial());
    CHECK(h.h[5] == AbelianGroup{1, {}});
    CHECK(h.spin == Spin::Yes);
}

TEST_CASE("spin from rotation numbers") {
    page::PageDiagram odd = page::PageDiagram::make({}, {page::Circle{"K", {}, -2, 1, 0}}, {});
    OpenBook b{odd, {}};
    CHECK(open_book_homology(b).spin == Spin::No);

    page::PageDiagram odd_tb1 = page::PageDiagram::make({}, {page::Circle{"K", {}, -1, 1, 0}}, {});
    OpenBook c = make_book(odd_tb1, std::vector<std::string>{"K"});
    CHECK(open_book_homology(c).spin == Spin::Unknown);
}

TEST_CASE("double branched cover doubles the word") {
    OpenBook b = sigma_book(2);
    OpenBook d = double_branched_cover(b);
    CHECK(d.monodromy.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(d.monodromy[i] == b.monodromy[i]);
        CHECK(d.monodromy[4 + i] == b.monodromy[i]);
    }
    // Applying it twice is the fourfold repetition.
    OpenBook dd = double_branched_cover(d);
    CHECK(dd.monodromy.size() == 16);
}

TEST_CASE("book connected sum") {
    OpenBook a = disc_bundle_book(2);
    page::PageDiagram p2 = page::PageDiagram::make({}, {page::Circle{"L", {}, -1, 0, 0}}, {});
    OpenBook b = make_book(p2, std::vector<std::string>{"L"});
    OpenBook s = book_connected_sum(a, b);
    CHECK(s.page.size() == 2);
    CHECK(s.monodromy.size() == 3);
    CHECK(s.monodromy[2] == TwistLetter{1, 1});
    CHECK(s.page.linking_defined(0, 1));
    CHECK(s.page.linking(0, 1) == 0);

    // Summing with an empty book is refused.
    OpenBook empty = make_book(page::PageDiagram{}, std::vector<TwistLetter>{});
    CHECK_THROWS_AS(book_connected_sum(a, empty), UnsupportedSphere);

    // Name collisions are refused.
    CHECK_THROWS_AS(book_connected_sum(a, a), ValidationError);
}

TEST_CASE("stabilize book preserves homology") {
    for (OpenBook b : {sigma_book(2), sigma_book(3), disc_bundle_book(2),
                       make_book(page::PageDiagram{}, std::vector<TwistLetter>{})}) {
        HomologyProfile before = open_book_homology(b);
        OpenBook s = stabilize_book(b);
        CHECK(s.page.size() == b.page.size() + 1);
        CHECK(s.monodromy.size() == b.monodromy.size() + 1);
        CHECK(open_book_homology(s) == before);
        // And again.
        CHECK(open_book_homology(stabilize_book(s)) == before);
    }
}

TEST_CASE("books refuse pages with 1-handles for homology") {
    page::PageDiagram p = page::PageDiagram::make({"g"}, {}, {});
    OpenBook b{p, {}};
    CHECK_THROWS_AS(open_book_homology(b), UnsupportedPage);
    CHECK_THROWS_AS(mapping_torus_homology(b), UnsupportedPage);
}
