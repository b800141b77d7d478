#pragma once

/*
 * Dense exact linear algebra over Q.
 *
 * det() and solve() clear row denominators and then run fraction-free
 * (Bareiss) elimination on integers, so intermediate entries stay minors of
 * the input instead of growing as nested fractions.
 */

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace toric {

using QVec = std::vector<Rat>;
using IVec = std::vector<std::int64_t>;

inline QVec to_qvec(std::span<const std::int64_t> v) { return QVec(v.begin(), v.end()); }

inline Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(std::span<const std::int64_t> a, std::span<const Rat> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += Rat(static_cast<long long>(a[i])) * b[i];
    return s;
}

inline BigInt dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += BigInt(a[i]) * b[i];
    return s;
}

inline QVec operator+(const QVec& a, const QVec& b) {
    QVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.at(i);
    return r;
}
inline QVec operator-(const QVec& a, const QVec& b) {
    QVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.at(i);
    return r;
}
inline QVec operator-(const QVec& a) {
    QVec r(a);
    for (auto& x : r) x = -x;
    return r;
}
inline QVec operator*(const Rat& s, const QVec& a) {
    QVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMat from_rows(const std::vector<QVec>& rows, std::size_t cols) {
        QMat m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("QMat: ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + i * cols);
        }
        return m;
    }
    static QMat from_rows(const std::vector<IVec>& rows, std::size_t cols) {
        QMat m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("QMat: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rat(static_cast<long long>(rows[i][j]));
        }
        return m;
    }
    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QVec row(std::size_t i) const {
        return QVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    QVec operator*(const QVec& x) const {
        if (x.size() != cols_) throw std::invalid_argument("QMat * QVec: dimension mismatch");
        QVec y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const QMat&, const QMat&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

namespace detail {

using IntMat = std::vector<std::vector<BigInt>>;

// Scales each row by the lcm of its denominators. Returns the integer matrix
// and the product of the scale factors.
inline IntMat clear_denominators(const QMat& m, BigInt* scale_product = nullptr) {
    IntMat out(m.rows(), std::vector<BigInt>(m.cols()));
    BigInt prod = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).den());
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).num() * (l / m(i, j).den());
        prod *= l;
    }
    if (scale_product) *scale_product = prod;
    return out;
}

// Fraction-free row echelon form over the first `pivot_cols` columns. Every
// entry stays a minor of the input; the division by the previous pivot is
// exact (Sylvester's identity). Returns the pivot column of each pivot row.
inline std::vector<std::size_t> bareiss_echelon(IntMat& m, std::size_t pivot_cols, int* swaps = nullptr) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    BigInt prev = 1;
    std::size_t r = 0;
    int nswaps = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            ++nswaps;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.push_back(c);
        ++r;
    }
    if (swaps) *swaps = nswaps;
    return pivots;
}

} // namespace detail

inline Rat det(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    BigInt scale;
    auto a = detail::clear_denominators(m, &scale);
    int swaps = 0;
    auto pivots = detail::bareiss_echelon(a, n, &swaps);
    if (pivots.size() < n) return Rat();
    BigInt d = a[n - 1][n - 1];
    if (swaps % 2) d = -d;
    return Rat(d, scale);
}

inline std::size_t rank(const QMat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto a = detail::clear_denominators(m);
    return detail::bareiss_echelon(a, m.cols()).size();
}

inline std::size_t rank(const std::vector<IVec>& rows, std::size_t cols) {
    return rank(QMat::from_rows(rows, cols));
}

enum class SolveStatus { Unique, NoSolution, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::NoSolution;
    QVec x;  // filled only when status == Unique

    explicit operator bool() const { return status == SolveStatus::Unique; }
};

// Solves a x = b. Distinguishes an inconsistent system from a consistent one
// whose solution space is positive-dimensional.
inline SolveResult solve(const QMat& a, const QVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length does not match rows");
    const std::size_t n = a.cols();
    QMat aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto m = detail::clear_denominators(aug);
    auto pivots = detail::bareiss_echelon(m, n);
    const std::size_t r = pivots.size();
    for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][n] != 0) return {SolveStatus::NoSolution, {}};
    if (r < n) return {SolveStatus::Underdetermined, {}};

    QVec x(n);
    for (std::size_t i = r; i-- > 0;) {
        Rat s(m[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) s -= Rat(m[i][j]) * x[j];
        x[i] = s / Rat(m[i][i]);
    }
    return {SolveStatus::Unique, std::move(x)};
}

// Basis of { x : m x = 0 } from the reduced row echelon form.
inline std::vector<QVec> nullspace(const QMat& m) {
    const std::size_t cols = m.cols();
    if (m.rows() == 0) {
        std::vector<QVec> basis;
        for (std::size_t j = 0; j < cols; ++j) {
            QVec e(cols);
            e[j] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    QMat a = m;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        Rat inv = Rat(1) / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Rat f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer coordinate exceeds 64 bits");
    return v.convert_to<std::int64_t>();
}

// Divides an integer vector by the gcd of its entries.
inline IVec primitive(std::span<const std::int64_t> v) {
    BigInt g = 0;
    for (auto x : v) g = gcd(g, BigInt(x < 0 ? -BigInt(x) : BigInt(x)));
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_int64(BigInt(v[i]) / g);
    return out;
}

inline bool is_primitive(std::span<const std::int64_t> v) {
    BigInt g = 0;
    for (auto x : v) g = gcd(g, BigInt(x < 0 ? -BigInt(x) : BigInt(x)));
    return g == 1;
}

// The primitive integer vector positively proportional to a nonzero rational vector.
inline IVec primitive(std::span<const Rat> v) {
    BigInt l = 1;
    for (const auto& x : v) l = lcm(l, x.den());
    IVec scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = to_int64(v[i].num() * (l / v[i].den()));
    return primitive(std::span<const std::int64_t>(scaled));
}

inline bool is_integral(std::span<const Rat> v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_integer(); });
}

inline IVec to_ivec(std::span<const Rat> v) {
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_integer()) throw std::invalid_argument("to_ivec: non-integral entry " + v[i].str());
        out[i] = to_int64(v[i].num());
    }
    return out;
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(static_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace toric
