#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obk/errors.hpp"
#include "obk/page.hpp"
#include "helpers.hpp"

using namespace obk;
using namespace obk::page;
using zalg::IntMatrix;

namespace {

PageDiagram two_unknots(long long lk, Int tb1 = -1, Int tb2 = -1) {
    std::vector<Circle> cs{Circle{"K1", {}, tb1, 0, 0}, Circle{"K2", {}, tb2, 0, 0}};
    std::map<std::pair<std::size_t, std::size_t>, Int> l;
    if (lk) l[{0, 1}] = lk;
    return PageDiagram::make({}, std::move(cs), std::move(l));
}

}  // namespace

TEST_CASE("framing matrix") {
    CHECK(framing_matrix(two_unknots(3)) == IntMatrix::from_rows({{-2, 3}, {3, -2}}));
    CHECK(framing_matrix(two_unknots(0, -3, -1)) == IntMatrix::from_rows({{-4, 0}, {0, -2}}));
    CHECK(framing_matrix(PageDiagram{}) == IntMatrix(0, 0));

    PageDiagram with_handle = PageDiagram::make(
        {"g"}, {Circle{"A", words::Word::parse("g"), -1, 0, 0}, Circle{"B", {}, -1, 0, 0}}, {});
    CHECK_THROWS_AS(framing_matrix(with_handle), UndefinedEntries);
    try {
        framing_matrix(with_handle);
    } catch (const UndefinedEntries& e) {
        REQUIRE(e.pairs.size() == 1);
        CHECK(e.pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
    }
}

TEST_CASE("fundamental group presentation") {
    PageDiagram p = PageDiagram::make(
        {"g", "h"},
        {Circle{"A", words::Word::parse("g h G"), -1, 0, 0}, Circle{"B", {}, -1, 0, 0}}, {});
    words::Presentation pres = fundamental_group(p);
    CHECK(pres.generators == std::vector<std::string>{"g", "h"});
    // Empty circle words contribute no relation.
    REQUIRE(pres.relations.size() == 1);
    CHECK(pres.relations[0].to_string() == "ghG");

    CHECK(fundamental_group(PageDiagram{}) == words::Presentation{});
}

TEST_CASE("boundary homology") {
    CHECK(boundary_homology(two_unknots(2)) == zalg::AbelianGroup{1, {Int(2)}});
    CHECK(boundary_homology(two_unknots(3)) == zalg::AbelianGroup{0, {Int(5)}});
    // Empty page: boundary is the 3-sphere.
    CHECK(boundary_homology(PageDiagram{}).is_trivial());

    PageDiagram with_handle = PageDiagram::make({"g"}, {}, {});
    CHECK_THROWS_AS(boundary_homology(with_handle), UnsupportedPage);
}

TEST_CASE("first chern vector") {
    std::vector<Circle> cs{Circle{"A", {}, -2, 1, 0}, Circle{"B", {}, -1, -3, 0}};
    PageDiagram p = PageDiagram::make({}, std::move(cs), {});
    CHECK(first_chern(p).entries == std::vector<Int>{1, -3});
}

TEST_CASE("twist support validation") {
    PageDiagram p = PageDiagram::make(
        {"g"},
        {Circle{"A", {}, -1, 0, 0}, Circle{"B", {}, -2, 0, 0},
         Circle{"C", words::Word::parse("g"), -1, 0, 0}},
        {});
    CHECK(validate_twist_support(p, 0));
    CHECK_FALSE(validate_twist_support(p, 1));  // wrong framing
    CHECK_FALSE(validate_twist_support(p, 2));  // runs through a handle
    CHECK_THROWS_AS(validate_twist_support(p, 3), ValidationError);
}

TEST_CASE("page validation") {
    CHECK_THROWS_AS(PageDiagram::make({}, {Circle{"A", {}, -1, 0, 0}, Circle{"A", {}, -1, 0, 0}}, {}),
                    ValidationError);
    CHECK_THROWS_AS(PageDiagram::make({"g", "g"}, {}, {}), ValidationError);
    CHECK_THROWS_AS(PageDiagram::make({}, {Circle{"A", words::Word::parse("g"), -1, 0, 0}}, {}),
                    ValidationError);
    CHECK_THROWS_AS(PageDiagram::make({}, {Circle{"A", {}, -1, 0, -2}}, {}), ValidationError);
    // Linking entries must reference null-homologous pairs.
    std::map<std::pair<std::size_t, std::size_t>, Int> l{{{0, 1}, Int(1)}};
    CHECK_THROWS_AS(PageDiagram::make({"g"},
                                      {Circle{"A", words::Word::parse("g"), -1, 0, 0},
                                       Circle{"B", {}, -1, 0, 0}},
                                      std::move(l)),
                    ValidationError);
}

TEST_CASE("congruence invariance of the boundary group") {
    // coker(Q) only sees the GL(n,Z) congruence class of Q.
    auto rng = test_rng(31);
    std::uniform_int_distribution<int> val(-4, 4);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = dim(rng);
        IntMatrix q(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                q.at(i, j) = val(rng);
                q.at(j, i) = q.at(i, j);
            }
        // Random unimodular E as a product of elementary matrices.
        IntMatrix e = IntMatrix::identity(n);
        for (int s = 0; s < 6; ++s) {
            std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
            std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
            if (i == j) continue;
            e.row_axpy(i, j, Int(val(rng)));
        }
        IntMatrix q2 = e.transpose() * q * e;
        CHECK(boundary_homology(q) == boundary_homology(q2));
    }
}
