#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "obk/zalg.hpp"
#include "helpers.hpp"

using namespace obk;
using zalg::IntMatrix;
using zalg::AbelianGroup;

namespace {

bool is_unimodular(const IntMatrix& m) {
    Int d = zalg::det(m);
    return d == 1 || d == -1;
}

bool diagonal_chain_ok(const IntMatrix& d) {
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && d.at(i, j) != 0) return false;
    bool seen_zero = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Int& v = d.at(i, i);
        if (v < 0) return false;
        if (v == 0) {
            seen_zero = true;
            continue;
        }
        if (seen_zero) return false;  // zeros must trail
        if (i + 1 < n && d.at(i + 1, i + 1) != 0 && d.at(i + 1, i + 1) % v != 0) return false;
    }
    return true;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t maxdim = 6, long long maxabs = 9) {
    std::uniform_int_distribution<std::size_t> dim(0, maxdim);
    std::uniform_int_distribution<long long> val(-maxabs, maxabs);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = val(rng);
    return m;
}

}  // namespace

TEST_CASE("smith normal form of pinned matrices") {
    auto s = zalg::smith_normal_form(IntMatrix::from_rows({{-2, 3}, {3, -2}}));
    CHECK(s.D == IntMatrix::from_rows({{1, 0}, {0, 5}}));

    s = zalg::smith_normal_form(IntMatrix::from_rows({{-2, 2}, {2, -2}}));
    CHECK(s.D == IntMatrix::from_rows({{2, 0}, {0, 0}}));

    // 0x0 and empty-sided shapes are legal inputs.
    s = zalg::smith_normal_form(IntMatrix(0, 0));
    CHECK(s.D.rows() == 0);
    CHECK(s.U.rows() == 0);
    CHECK(s.V.cols() == 0);
    s = zalg::smith_normal_form(IntMatrix(1, 0));
    CHECK(s.U == IntMatrix::identity(1));
    CHECK(s.D.rows() == 1);
    CHECK(s.D.cols() == 0);
}

TEST_CASE("smith normal form properties on random matrices") {
    auto rng = test_rng(1);
    for (int it = 0; it < 400; ++it) {
        IntMatrix a = random_matrix(rng);
        auto s = zalg::smith_normal_form(a);
        CHECK(s.U * a * s.V == s.D);
        CHECK(is_unimodular(s.U));
        CHECK(is_unimodular(s.V));
        CHECK(diagonal_chain_ok(s.D));
    }
}

TEST_CASE("cokernel of pinned matrices") {
    CHECK(zalg::cokernel(IntMatrix::from_rows({{5}})) == AbelianGroup{0, {5}});
    CHECK(zalg::cokernel(IntMatrix::from_rows({{-2, 2}, {2, -2}})) == AbelianGroup{1, {2}});
    CHECK(zalg::cokernel(IntMatrix(1, 0)) == AbelianGroup{1, {}});
    CHECK(zalg::cokernel(IntMatrix(0, 0)) == AbelianGroup{0, {}});
    CHECK(zalg::cokernel(IntMatrix::from_rows({{-2, 3}, {3, -2}})) == AbelianGroup{0, {5}});
    CHECK(zalg::cokernel(IntMatrix::from_rows({{1, 0}, {0, 1}})).is_trivial());
}

TEST_CASE("cokernel order equals |det| for nonsingular square matrices") {
    auto rng = test_rng(2);
    int checked = 0;
    while (checked < 200) {
        IntMatrix a = random_matrix(rng, 5, 6);
        if (a.rows() != a.cols() || a.rows() == 0) continue;
        Int d = zalg::det(a);
        if (d == 0) continue;
        AbelianGroup g = zalg::cokernel(a);
        CHECK(g.is_finite());
        CHECK(g.torsion_order() == (d < 0 ? Int(-d) : d));
        ++checked;
    }
}

TEST_CASE("kernel rank") {
    CHECK(zalg::kernel_rank(IntMatrix::from_rows({{-2, 2}, {2, -2}})) == 1);
    CHECK(zalg::kernel_rank(IntMatrix::from_rows({{-2, 3}, {3, -2}})) == 0);
    CHECK(zalg::kernel_rank(IntMatrix(0, 3)) == 3);
    CHECK(zalg::kernel_rank(IntMatrix(3, 0)) == 0);

    // rank(ker) + rank(im) = number of columns
    auto rng = test_rng(3);
    for (int it = 0; it < 100; ++it) {
        IntMatrix a = random_matrix(rng);
        auto s = zalg::smith_normal_form(a);
        std::size_t rank = 0;
        for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
            if (s.D.at(i, i) != 0) ++rank;
        CHECK(zalg::kernel_rank(a) + rank == a.cols());
    }
}

TEST_CASE("abelian group formatting") {
    CHECK(AbelianGroup{0, {}}.to_string() == "0");
    CHECK(AbelianGroup{1, {}}.to_string() == "Z");
    CHECK(AbelianGroup{2, {}}.to_string() == "Z^2");
    CHECK(AbelianGroup{0, {Int(5)}}.to_string() == "Z/5");
    CHECK(AbelianGroup{1, {Int(2), Int(4)}}.to_string() == "Z + Z/2 + Z/4");
}

TEST_CASE("gl orbit invariant examples") {
    using V = std::vector<Int>;
    CHECK(zalg::gl_orbit_invariant(V{2, 4}) == V{2, 0});
    CHECK(zalg::gl_orbit_invariant(V{3, 5}) == V{1, 0});
    CHECK(zalg::gl_orbit_invariant(V{0, 0, 0}) == V{0, 0, 0});
    CHECK(zalg::gl_orbit_invariant(V{-6}) == V{6});
    CHECK(zalg::gl_orbit_invariant(V{}) == V{});
}

// Brute-force cross-check: breadth-first search over images of v under
// elementary GL(m,Z) generators (swap, negate, add a coordinate into
// another), restricted to a bounded box.  The normal form must be the
// least (d,0,...,0) pattern the search can reach.
namespace {

std::set<std::vector<long long>> bounded_orbit(const std::vector<long long>& v, long long bound,
                                               std::size_t cap = 200000) {
    std::set<std::vector<long long>> seen{v};
    std::vector<std::vector<long long>> frontier{v};
    auto push = [&](std::vector<long long> w, std::vector<std::vector<long long>>& next) {
        for (long long x : w)
            if (x > bound || x < -bound) return;
        if (seen.size() >= cap) return;
        if (seen.insert(w).second) next.push_back(std::move(w));
    };
    while (!frontier.empty()) {
        std::vector<std::vector<long long>> next;
        for (const auto& w : frontier) {
            const std::size_t m = w.size();
            for (std::size_t i = 0; i < m; ++i) {
                auto neg = w;
                neg[i] = -neg[i];
                push(neg, next);
                for (std::size_t j = 0; j < m; ++j) {
                    if (i == j) continue;
                    auto sw = w;
                    std::swap(sw[i], sw[j]);
                    push(sw, next);
                    auto add = w;
                    add[i] += add[j];
                    push(add, next);
                    auto sub = w;
                    sub[i] -= sub[j];
                    push(sub, next);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("gl orbit invariant matches bounded brute-force search") {
    for (std::size_t m = 1; m <= 3; ++m) {
        std::vector<long long> v(m, -3);
        for (;;) {
            auto orbit = bounded_orbit(v, 8);
            long long best = -1;
            for (const auto& w : orbit) {
                bool pattern = w[0] >= 0;
                for (std::size_t i = 1; i < m; ++i) pattern = pattern && w[i] == 0;
                if (pattern && (best < 0 || w[0] < best)) best = w[0];
            }
            REQUIRE(best >= 0);
            std::vector<Int> vv(v.begin(), v.end());
            auto nf = zalg::gl_orbit_invariant(vv);
            CHECK(nf[0] == best);
            for (std::size_t i = 1; i < m; ++i) CHECK(nf[i] == 0);

            std::size_t k = 0;
            while (k < m && v[k] == 3) v[k++] = -3;
            if (k == m) break;
            ++v[k];
        }
    }
}

TEST_CASE("determinant") {
    CHECK(zalg::det(IntMatrix(0, 0)) == 1);
    CHECK(zalg::det(IntMatrix::from_rows({{7}})) == 7);
    CHECK(zalg::det(IntMatrix::from_rows({{-2, 3}, {3, -2}})) == -5);
    CHECK(zalg::det(IntMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})) == 1);
    CHECK(zalg::det(IntMatrix::from_rows({{2, 4}, {1, 2}})) == 0);
}
