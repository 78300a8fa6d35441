#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dec/errors.hpp"
#include "dec/exact_linalg.hpp"
#include "dec/form.hpp"
#include "dec/operators.hpp"

namespace dec {

struct CohomologyResult {
    std::array<int, 3> betti{};
    /// Integer-valued closed forms, one basis of each quotient ker d_r / im d_{r-1}.
    std::array<std::vector<Form>, 3> generators;
    /// rank of d_r; d_2 is the zero map.
    std::array<std::size_t, 3> ranks{};
};

struct ExactnessResult {
    bool exact = false;
    /// Some phi with d phi = w when w is exact of positive degree.
    std::optional<Form> preimage;
};

namespace detail {

inline exact::RationalVector exact_components(const Form& w, const BasisOrdering& basis) {
    exact::RationalVector out;
    out.reserve(basis.size());
    for (const auto& c : basis.labels) out.push_back(exact::from_double(w.component(c)));
    return out;
}

inline bool is_closed_exactly(const Form& w) {
    if (w.degree() == 2) return true;
    const auto dm = assemble_d(w.shape(), w.degree());
    const auto x = exact_components(w, dm.cols);
    for (std::size_t i = 0; i < dm.entries.rows(); ++i) {
        exact::Rational acc = 0;
        for (std::size_t j = 0; j < dm.entries.cols(); ++j)
            if (dm.entries(i, j) != 0) acc += dm.entries(i, j) * x[j];
        if (acc != 0) return false;
    }
    return true;
}

inline std::vector<exact::RationalVector> columns_of(const IntMatrix& a) {
    std::vector<exact::RationalVector> cols(a.cols(), exact::RationalVector(a.rows()));
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) cols[j][i] = a(i, j);
    return cols;
}

}  // namespace detail

/// (b0, b1, b2) from exact ranks of the coboundary matrices.
inline std::array<int, 3> betti_numbers(const GridShape& shape) {
    if (!shape.is_torus()) throw error("cohomology is defined on the torus only");
    const int cells = shape.n * shape.m;
    const int r0 = static_cast<int>(exact::rank(assemble_d(shape, 0).entries));
    const int r1 = static_cast<int>(exact::rank(assemble_d(shape, 1).entries));
    return {cells - r0, 2 * cells - r1 - r0, cells - r1};
}

/// Closed integer forms whose classes form a basis of the degree-r cohomology.
///
/// Kernel vectors of d_r are taken in pivot order and kept when they raise the
/// rank of the span of im d_{r-1}; each is scaled to a primitive integer vector.
inline std::vector<Form> generators(const GridShape& shape, int degree) {
    if (!shape.is_torus()) throw error("cohomology is defined on the torus only");
    if (degree < 0 || degree > 2) throw error("cohomology degree must be 0, 1 or 2");
    const auto basis = canonical_ordering(shape, degree);
    const std::size_t dim = basis.size();

    std::vector<exact::RationalVector> closed;
    if (degree == 2) {
        for (std::size_t i = 0; i < dim; ++i) {
            exact::RationalVector e(dim, exact::Rational(0));
            e[i] = 1;
            closed.push_back(std::move(e));
        }
    } else {
        closed = exact::null_space(assemble_d(shape, degree).entries);
    }

    std::vector<exact::RationalVector> span;
    if (degree > 0) span = detail::columns_of(assemble_d(shape, degree - 1).entries);
    std::size_t current = exact::rank_of_columns(span, dim);

    std::vector<Form> out;
    for (const auto& v : closed) {
        span.push_back(v);
        const std::size_t next = exact::rank_of_columns(span, dim);
        if (next == current) {
            span.pop_back();
            continue;
        }
        current = next;
        const auto ints = exact::clear_denominators(v);
        std::vector<double> values(ints.begin(), ints.end());
        out.push_back(devectorize(values, shape, basis));
    }
    return out;
}

inline CohomologyResult cohomology(const GridShape& shape, bool with_generators = true) {
    CohomologyResult res;
    res.betti = betti_numbers(shape);
    res.ranks = {exact::rank(assemble_d(shape, 0).entries), exact::rank(assemble_d(shape, 1).entries), 0};
    if (with_generators)
        for (int r = 0; r < 3; ++r) res.generators[r] = generators(shape, r);
    return res;
}

/// Whether a closed form is exact, solved exactly over the rationals.
inline ExactnessResult is_exact(const Form& w) {
    if (!w.shape().is_torus()) throw error("cohomology is defined on the torus only");
    if (!detail::is_closed_exactly(w)) throw not_closed("form is not closed");
    if (w.degree() == 0) return {w.is_zero(), std::nullopt};

    const auto dm = assemble_d(w.shape(), w.degree() - 1);
    const auto sol = exact::solve(dm.entries, detail::exact_components(w, dm.rows));
    if (!sol) return {false, std::nullopt};
    std::vector<double> values;
    for (const auto& x : *sol) values.push_back(static_cast<double>(x));
    return {true, devectorize(values, w.shape(), dm.cols)};
}

/// Closed forms a and b are cohomologous when a - b is exact.
inline bool cohomologous(const Form& a, const Form& b) {
    if (!(a.shape() == b.shape())) throw shape_mismatch("forms live on different shapes");
    if (a.degree() != b.degree()) throw degree_mismatch("forms have different degrees");
    if (!detail::is_closed_exactly(a) || !detail::is_closed_exactly(b)) throw not_closed("form is not closed");
    return is_exact(a - b).exact;
}

}  // namespace dec
