#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dec/matrix.hpp"

namespace dec::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using RationalMatrix = DenseMatrix<Rational>;

inline RationalMatrix to_rational(const IntMatrix& a) {
    RationalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
    return r;
}

/// Rank by fraction-free (Bareiss) elimination over arbitrary-precision integers.
inline std::size_t rank(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    DenseMatrix<Integer> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);

    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

/// Reduced row echelon form over the rationals. Pivots are taken column by
/// column, choosing the first nonzero row, so the result is deterministic.
struct Echelon {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_columns;
};

inline Echelon rref(RationalMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

/// Basis of the null space, one vector per free column in increasing order.
inline std::vector<RationalVector> null_space(const IntMatrix& a) {
    const auto [red, pivots] = rref(to_rational(a));
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(a.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with a x = b, or nothing when b is outside the column space.
inline std::optional<RationalVector> solve(const IntMatrix& a, const RationalVector& b) {
    if (b.size() != a.rows()) throw dimension_mismatch("right-hand side length does not match matrix rows");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto [red, pivots] = rref(std::move(aug));
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    RationalVector x(a.cols(), Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, a.cols());
    return x;
}

/// Rank of a set of rational column vectors of equal length.
inline std::size_t rank_of_columns(const std::vector<RationalVector>& columns, std::size_t length) {
    if (columns.empty()) return 0;
    RationalMatrix m(length, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < length; ++i) m(i, j) = columns[j][i];
    return rref(std::move(m)).pivot_columns.size();
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline std::vector<std::int64_t> clear_denominators(const RationalVector& v) {
    Integer lcm = 1;
    for (const auto& x : v) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& x : v) {
        ints.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
        g = boost::multiprecision::gcd(g, ints.back());
    }
    std::vector<std::int64_t> out;
    for (const auto& x : ints) out.push_back(static_cast<std::int64_t>(g == 0 ? x : x / g));
    return out;
}

/// A double as an exact rational (every finite double is a dyadic rational).
inline Rational from_double(double x) { return Rational(x); }

}  // namespace dec::exact
