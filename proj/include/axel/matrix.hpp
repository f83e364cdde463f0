#ifndef AXEL_MATRIX_HPP
#define AXEL_MATRIX_HPP

#include <axel/ratfunc.hpp>

#include <optional>
#include <vector>

namespace axel {

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("singular matrix") {}
};

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        if (a.cols_ == 0) throw std::invalid_argument("empty matrix product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                r(i, j) = a(i, 0) * b(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<RatFunc>;
using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

// ----- fraction-free elimination over polynomial entries -----------------

namespace detail {

// Clears denominators row by row; row scaling preserves rank.
inline Matrix<MultiPoly> cleared(const ExactMatrix& m, const VarsPtr& vars) {
    Matrix<MultiPoly> p(m.rows(), m.cols(), MultiPoly(vars));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        MultiPoly d = MultiPoly::constant(vars, 1);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const MultiPoly& dc = m(r, c).den();
            d = divexact(d * dc, poly_gcd(d, dc));
        }
        for (std::size_t c = 0; c < m.cols(); ++c)
            p(r, c) = m(r, c).num() * divexact(d, m(r, c).den());
    }
    return p;
}

// Bareiss one-step fraction-free elimination; returns rank.
inline std::size_t bareiss_rank(Matrix<MultiPoly> a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    if (rows == 0 || cols == 0) return 0;
    MultiPoly prev; // previous pivot; unset on first step
    bool have_prev = false;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(rank, j));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                MultiPoly v = a(rank, c) * a(r, j) - a(r, c) * a(rank, j);
                a(r, j) = have_prev ? divexact(v, prev) : v;
            }
            a(r, c) = MultiPoly(a(rank, c).vars());
        }
        prev = a(rank, c);
        have_prev = true;
        ++rank;
    }
    return rank;
}

} // namespace detail

inline std::size_t rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return detail::bareiss_rank(detail::cleared(m, m(0, 0).vars()));
}

inline RatFunc det(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) throw std::invalid_argument("det of empty matrix");
    const VarsPtr& vars = m(0, 0).vars();
    // Fraction-free Bareiss elimination: rows are first cleared of
    // denominators, then every intermediate entry is an exact minor and the
    // only divisions are exact polynomial divisions by the previous pivot.
    std::vector<std::vector<MultiPoly>> a(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
    MultiPoly scale = MultiPoly::constant(vars, 1);
    for (std::size_t r = 0; r < n; ++r) {
        MultiPoly dr = MultiPoly::constant(vars, 1);
        for (std::size_t c = 0; c < n; ++c) {
            const MultiPoly& dc = m(r, c).den();
            MultiPoly g = poly_gcd(dr, dc);
            dr = divexact(dr, g) * dc;
        }
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = m(r, c).num() * divexact(dr, m(r, c).den());
        scale *= dr;
    }
    bool negate = false;
    MultiPoly prev = MultiPoly::constant(vars, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k].is_zero()) ++piv;
        if (piv == n) return RatFunc(vars);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = MultiPoly(vars);
        }
        prev = a[k][k];
    }
    MultiPoly d = a[n - 1][n - 1];
    if (negate) d = -d;
    return RatFunc(std::move(d), std::move(scale));
}

inline ExactMatrix identity_matrix(const VarsPtr& vars, std::size_t n) {
    ExactMatrix m(n, n, RatFunc(vars));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc::constant(vars, 1);
    return m;
}

// Exact inverse via Gauss-Jordan; throws SingularMatrix when rank < n.
inline ExactMatrix invert(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return m;
    const VarsPtr& vars = m(0, 0).vars();
    ExactMatrix a = m;
    ExactMatrix inv = identity_matrix(vars, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c).is_zero()) ++piv;
        if (piv == n) throw SingularMatrix();
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        RatFunc p = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            RatFunc f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

// ----- rational linear algebra -------------------------------------------

// Reduced row echelon form in place; returns pivot column per pivot row.
inline std::vector<std::size_t> rref(QMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
        Rational p = a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) /= p;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Scales a rational vector to coprime integers with positive leading entry.
inline std::vector<Rational> integerize(std::vector<Rational> v) {
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& x : v) {
        den_lcm = lcm(den_lcm, denom(x));
        num_gcd = gcd(num_gcd, numer(x));
    }
    if (num_gcd == 0) return v;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (const auto& x : v)
        if (x != 0) {
            if (x * scale < 0) scale = -scale;
            break;
        }
    for (auto& x : v) x *= scale;
    return v;
}

// Basis of the right kernel over Q; each vector scaled to coprime integers
// with positive leading entry; ordered by free column index.
inline std::vector<std::vector<Rational>> q_kernel_basis(const QMatrix& m) {
    std::size_t ncols = m.cols();
    QMatrix a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
        basis.push_back(integerize(std::move(v)));
    }
    return basis;
}

inline std::size_t q_rank(const QMatrix& m) {
    QMatrix a = m;
    return rref(a).size();
}

// Solves M x = b over Q; returns one solution if consistent.
inline std::optional<std::vector<Rational>> q_solve(const QMatrix& m,
                                                    const std::vector<Rational>& b) {
    QMatrix a(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) a(r, c) = m(r, c);
        a(r, m.cols()) = b[r];
    }
    auto pivots = rref(a);
    for (std::size_t c : pivots)
        if (c == m.cols()) return std::nullopt; // inconsistent
    std::vector<Rational> x(m.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a(r, m.cols());
    return x;
}

// ----- integer row Hermite normal form -----------------------------------

// Row-style HNF with zero rows deleted: pivots positive, entries above each
// pivot reduced into [0, pivot).  Canonical for the row lattice.
inline ZMatrix hnf_row_canonical(ZMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Reduce column c below row r to a single nonzero entry by gcd steps.
        while (true) {
            std::size_t piv = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a(i, c) != 0 && (piv == rows || abs(a(i, c)) < abs(a(piv, c)))) piv = i;
            if (piv == rows) break;
            if (piv != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                Integer q = a(i, c) / a(r, c); // truncated division
                if (q != 0)
                    for (std::size_t j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
        }
        ++r;
    }
    ZMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
    return out;
}

} // namespace axel

#endif
