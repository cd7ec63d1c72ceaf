#include "obk/zalg.hpp"

#include <algorithm>
#include <sstream>

#include "obk/errors.hpp"

namespace obk {
namespace zalg {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw ValidationError("ragged matrix literal");
        std::size_t j = 0;
        for (long long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix difference shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& v) { return v == 0; });
}

IntMatrix IntMatrix::hcat(const IntMatrix& right) const {
    if (rows_ != right.rows_) throw ValidationError("hcat row mismatch");
    IntMatrix r(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) r.at(i, cols_ + j) = right.at(i, j);
    }
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::row_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) -= q * at(j, c);
}

void IntMatrix::col_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) at(r, i) -= q * at(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// Pivot choice is deterministic: smallest absolute value wins, ties by
// lowest (row, col).  Returns false when the trailing block is zero.
bool find_pivot(const IntMatrix& D, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j) {
            const Int& v = D.at(i, j);
            if (v == 0) continue;
            Int a = abs_int(v);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    const std::size_t r = A.rows(), c = A.cols();
    SmithDecomposition s{IntMatrix::identity(r), A, IntMatrix::identity(c)};
    IntMatrix& D = s.D;
    IntMatrix& U = s.U;
    IntMatrix& V = s.V;

    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi, pj;
        if (!find_pivot(D, t, pi, pj)) break;
        D.swap_rows(t, pi);
        U.swap_rows(t, pi);
        D.swap_cols(t, pj);
        V.swap_cols(t, pj);

        for (;;) {
            bool restart = false;
            // Clear column t below the pivot.  Truncated division keeps
            // |remainder| < |pivot|, so a nonzero remainder becomes a
            // strictly smaller pivot and the loop terminates.
            for (std::size_t i = t + 1; i < r && !restart; ++i) {
                if (D.at(i, t) == 0) continue;
                Int q = D.at(i, t) / D.at(t, t);
                D.row_axpy(i, t, q);
                U.row_axpy(i, t, q);
                if (D.at(i, t) != 0) {
                    D.swap_rows(i, t);
                    U.swap_rows(i, t);
                    restart = true;
                }
            }
            if (restart) continue;
            for (std::size_t j = t + 1; j < c && !restart; ++j) {
                if (D.at(t, j) == 0) continue;
                Int q = D.at(t, j) / D.at(t, t);
                D.col_axpy(j, t, q);
                V.col_axpy(j, t, q);
                if (D.at(t, j) != 0) {
                    D.swap_cols(j, t);
                    V.swap_cols(j, t);
                    restart = true;
                }
            }
            if (restart) continue;
            // Row and column t are clear.  Force the divisibility chain:
            // fold any entry the pivot does not divide into row t.
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c && !fixed; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        D.row_axpy(t, i, Int(-1));
                        U.row_axpy(t, i, Int(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (D.at(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    return s;
}

Int AbelianGroup::torsion_order() const {
    Int p = 1;
    for (const Int& t : torsion) p *= t;
    return p;
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
        os << "Z";
        first = false;
    } else if (free_rank > 1) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return os.str();
}

AbelianGroup cokernel(const IntMatrix& A) {
    SmithDecomposition s = smith_normal_form(A);
    AbelianGroup g;
    std::size_t rank = 0;
    const std::size_t n = std::min(A.rows(), A.cols());
    for (std::size_t i = 0; i < n; ++i) {
        const Int& d = s.D.at(i, i);
        if (d == 0) continue;
        ++rank;
        if (d > 1) g.torsion.push_back(d);
    }
    g.free_rank = A.rows() - rank;
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

std::size_t kernel_rank(const IntMatrix& A) {
    SmithDecomposition s = smith_normal_form(A);
    std::size_t rank = 0;
    const std::size_t n = std::min(A.rows(), A.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (s.D.at(i, i) != 0) ++rank;
    return A.cols() - rank;
}

Int det(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw ValidationError("determinant of non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    IntMatrix m = A;
    Int sign = 1, prev = 1;
    // Bareiss: exact division at every step, entries stay minors of A.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t swap = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap == k) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

std::vector<Int> gl_orbit_invariant(const std::vector<Int>& v) {
    Int d = 0;
    for (const Int& x : v) d = boost::multiprecision::gcd(d, x);
    std::vector<Int> r(v.size(), Int(0));
    if (!r.empty()) r[0] = d;
    return r;
}

}  // namespace zalg
}  // namespace obk
