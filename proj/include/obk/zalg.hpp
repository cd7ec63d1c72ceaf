#pragma once

// Exact integer linear algebra over Z: dense matrices with arbitrary
// precision entries, Smith normal form with recorded change of basis,
// finitely generated abelian groups, and the GL(m,Z) orbit normal form
// for integer vectors.  Everything here is exact; no floating point.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace obk {

using Int = boost::multiprecision::cpp_int;

namespace zalg {

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    // Convenience builder for literals in tests and fixtures.
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool is_identity() const;
    bool is_zero() const;

    // Horizontal concatenation [this | right].
    IntMatrix hcat(const IntMatrix& right) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i -= q * row j  /  col i -= q * col j
    void row_axpy(std::size_t i, std::size_t j, const Int& q);
    void col_axpy(std::size_t i, std::size_t j, const Int& q);
    void negate_row(std::size_t i);

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;  // row-major
};

// U * A * V = D with U, V unimodular and D diagonal, each diagonal entry
// nonnegative and dividing the next; trailing diagonal entries are zero.
struct SmithDecomposition {
    IntMatrix U, D, V;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

// Z^free_rank + sum of Z/t for t in torsion (each t >= 2, ascending
// divisibility chain).  The zero group is {0, {}}.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    // Order of the torsion subgroup (the full order when finite).
    Int torsion_order() const;

    // "0", "Z", "Z^3", "Z/5", "Z + Z/2 + Z/4", ...
    std::string to_string() const;
};

// Z^rows(A) modulo the span of the columns of A.
AbelianGroup cokernel(const IntMatrix& A);

// Rank of { x : A x = 0 } as a subgroup of Z^cols(A).
std::size_t kernel_rank(const IntMatrix& A);

// Exact determinant (fraction-free Gaussian elimination).
Int det(const IntMatrix& A);

// Normal form of v under the right action of GL(m,Z): (d, 0, ..., 0)
// where d = gcd of the entries (d = 0 for the zero vector).
std::vector<Int> gl_orbit_invariant(const std::vector<Int>& v);

}  // namespace zalg
}  // namespace obk
