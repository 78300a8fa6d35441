#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "dec/calculus.hpp"
#include "dec/errors.hpp"
#include "dec/form.hpp"
#include "dec/grid_complex.hpp"
#include "dec/matrix.hpp"

namespace dec {

enum class OrderingKind { Canonical, Paper2x2 };

inline std::string to_string(OrderingKind k) { return k == OrderingKind::Canonical ? "canonical" : "paper2x2"; }

/// Ordered list of basis cells used to index matrix rows or columns.
/// degree is -1 for the concatenated (0,1,2) basis of inhomogeneous forms.
struct BasisOrdering {
    int degree = 0;
    OrderingKind kind = OrderingKind::Canonical;
    std::vector<CellId> labels;

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(const CellId& c) const {
        auto it = std::find(labels.begin(), labels.end(), c);
        if (it == labels.end()) throw error("cell " + label(c) + " is not in the basis");
        return static_cast<std::size_t>(it - labels.begin());
    }

    friend bool operator==(const BasisOrdering&, const BasisOrdering&) = default;
};

/// Vertices and faces s-major with k fastest; edges all e1 then all e2, each s-major.
inline BasisOrdering canonical_ordering(const GridShape& shape, int degree) {
    BasisOrdering b{degree, OrderingKind::Canonical, {}};
    auto sweep = [&](int dim, int dir) {
        for (int s = 1; s <= shape.m; ++s)
            for (int k = 1; k <= shape.n; ++k) b.labels.push_back(make_cell(shape, dim, dir, k, s));
    };
    if (degree == 1) {
        sweep(1, 1);
        sweep(1, 2);
    } else {
        sweep(degree, 0);
    }
    return b;
}

/// The row-vector orders [x], [e] and [V] that accompany the printed 2x2 torus
/// matrices. These are fixed data, not derived from a rule.
inline BasisOrdering paper2x2_ordering(int degree) {
    const GridShape g = GridShape::torus(2, 2);
    BasisOrdering b{degree, OrderingKind::Paper2x2, {}};
    auto add = [&](int dim, int dir, std::initializer_list<std::pair<int, int>> idx) {
        for (auto [k, s] : idx) b.labels.push_back(make_cell(g, dim, dir, k, s));
    };
    switch (degree) {
        case 0: add(0, 0, {{1, 1}, {2, 1}, {1, 2}, {2, 2}}); break;
        case 1:
            add(1, 1, {{1, 1}, {2, 1}});
            add(1, 2, {{1, 2}, {1, 1}});
            add(1, 1, {{1, 2}, {2, 2}});
            add(1, 2, {{2, 2}, {2, 1}});
            break;
        case 2: add(2, 0, {{1, 2}, {2, 2}, {1, 1}, {2, 1}}); break;
        default: throw error("ordering degree must be 0, 1 or 2");
    }
    return b;
}

inline BasisOrdering make_ordering(const GridShape& shape, int degree, OrderingKind kind) {
    if (!shape.is_torus()) throw error("operator matrices are defined on the torus only");
    if (kind == OrderingKind::Canonical) return canonical_ordering(shape, degree);
    if (shape.n != 2 || shape.m != 2)
        throw ordering_shape_mismatch("paper2x2 ordering exists only for the 2x2 torus");
    return paper2x2_ordering(degree);
}

/// Basis of the inhomogeneous space: degree 0 labels, then 1, then 2.
inline BasisOrdering make_graded_ordering(const GridShape& shape, OrderingKind kind) {
    BasisOrdering b{-1, kind, {}};
    for (int r = 0; r < 3; ++r) {
        auto part = make_ordering(shape, r, kind);
        b.labels.insert(b.labels.end(), part.labels.begin(), part.labels.end());
    }
    return b;
}

/// Integer matrix of a linear operator between two labelled bases.
struct OperatorMatrix {
    std::string op;
    BasisOrdering rows;
    BasisOrdering cols;
    IntMatrix entries;

    friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;
};

inline std::vector<double> vectorize(const Form& w, const BasisOrdering& basis) {
    std::vector<double> out;
    out.reserve(basis.size());
    for (const auto& c : basis.labels) {
        if (c.dim != w.degree()) throw degree_mismatch("basis does not match form degree");
        out.push_back(w.component(c));
    }
    return out;
}

inline Form devectorize(std::span<const double> values, const GridShape& shape, const BasisOrdering& basis) {
    if (values.size() != basis.size()) throw dimension_mismatch("vector length does not match basis");
    Form w(shape, basis.degree);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& c = basis.labels[i];
        w.at(Form::component_of(c), c.k, c.s) = values[i];
    }
    return w;
}

inline std::vector<double> vectorize(const InhomogeneousForm& w, const BasisOrdering& basis) {
    std::vector<double> out;
    out.reserve(basis.size());
    for (const auto& c : basis.labels) out.push_back(w.part(c.dim).component(c));
    return out;
}

inline InhomogeneousForm devectorize_graded(std::span<const double> values, const GridShape& shape,
                                            const BasisOrdering& basis) {
    if (values.size() != basis.size()) throw dimension_mismatch("vector length does not match basis");
    InhomogeneousForm w(shape);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& c = basis.labels[i];
        w.part(c.dim).at(Form::component_of(c), c.k, c.s) = values[i];
    }
    return w;
}

/// Matrix-vector product; rows are summed left to right.
inline std::vector<double> apply(const OperatorMatrix& a, std::span<const double> x) {
    if (x.size() != a.entries.cols()) throw dimension_mismatch("vector length does not match matrix columns");
    std::vector<double> y(a.entries.rows(), 0.0);
    for (std::size_t i = 0; i < a.entries.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.entries.cols(); ++j) acc += static_cast<double>(a.entries(i, j)) * x[j];
        y[i] = acc;
    }
    return y;
}

namespace detail {

inline std::int64_t to_entry(double x) {
    const double r = std::round(x);
    if (r != x) throw error("operator produced a non-integer matrix entry");
    return static_cast<std::int64_t>(r);
}

inline void check_entries(const OperatorMatrix& m, std::initializer_list<std::int64_t> allowed) {
    for (auto x : m.entries.data())
        if (std::find(allowed.begin(), allowed.end(), x) == allowed.end())
            throw error("unexpected entry " + std::to_string(x) + " in " + m.op + " matrix");
}

/// Column j is op applied to the j-th basis indicator, read off in the row basis.
inline OperatorMatrix assemble_columns(const GridShape& shape, std::string op, const BasisOrdering& rows,
                                       const BasisOrdering& cols, const std::function<Form(const Form&)>& fn) {
    OperatorMatrix m{std::move(op), rows, cols, IntMatrix(rows.size(), cols.size())};
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Form image = fn(Form::indicator(shape, cols.labels[j]));
        for (std::size_t i = 0; i < rows.size(); ++i) m.entries(i, j) = to_entry(image.component(rows.labels[i]));
    }
    return m;
}

inline OperatorMatrix d_matrix(const GridShape& shape, int degree, const BasisOrdering& rows,
                               const BasisOrdering& cols) {
    auto m = assemble_columns(shape, "d" + std::to_string(degree), rows, cols, [](const Form& f) { return d(f); });
    check_entries(m, {-1, 0, 1});
    return m;
}

inline OperatorMatrix delta_matrix(const GridShape& shape, int degree, const BasisOrdering& rows,
                                   const BasisOrdering& cols) {
    auto m = assemble_columns(shape, "delta" + std::to_string(degree), rows, cols,
                              [](const Form& f) { return delta(f); });
    check_entries(m, {-1, 0, 1});
    return m;
}

}  // namespace detail

/// Matrix of d on degree 0 or 1 forms of a torus.
inline OperatorMatrix assemble_d(const GridShape& shape, int degree, OrderingKind kind = OrderingKind::Canonical) {
    if (degree != 0 && degree != 1) throw error("d matrices exist for degree 0 and 1");
    return detail::d_matrix(shape, degree, make_ordering(shape, degree + 1, kind), make_ordering(shape, degree, kind));
}

/// Matrix of delta on degree 1 or 2 forms of a torus.
inline OperatorMatrix assemble_delta(const GridShape& shape, int degree,
                                     OrderingKind kind = OrderingKind::Canonical) {
    if (degree != 1 && degree != 2) throw error("delta matrices exist for degree 1 and 2");
    return detail::delta_matrix(shape, degree, make_ordering(shape, degree - 1, kind),
                                make_ordering(shape, degree, kind));
}

/// Matrix of the Laplacian d delta + delta d on degree r forms of a torus.
///
/// Built as a sum of products of the first-order matrices and checked against
/// the columnwise application of the form-level Laplacian.
inline OperatorMatrix assemble_laplacian(const GridShape& shape, int degree,
                                         OrderingKind kind = OrderingKind::Canonical) {
    if (degree < 0 || degree > 2) throw error("laplacian degree must be 0, 1 or 2");
    const auto basis = make_ordering(shape, degree, kind);
    IntMatrix lap(basis.size(), basis.size());
    if (degree < 2) {
        const auto up = canonical_ordering(shape, degree + 1);
        lap = lap + detail::delta_matrix(shape, degree + 1, basis, up).entries *
                        detail::d_matrix(shape, degree, up, basis).entries;
    }
    if (degree > 0) {
        const auto down = canonical_ordering(shape, degree - 1);
        lap = lap + detail::d_matrix(shape, degree - 1, basis, down).entries *
                        detail::delta_matrix(shape, degree, down, basis).entries;
    }
    OperatorMatrix m{"lap" + std::to_string(degree), basis, basis, std::move(lap)};
    detail::check_entries(m, {-2, -1, 0, 1, 2, 4});
    const auto direct = detail::assemble_columns(shape, m.op, basis, basis, [](const Form& f) { return laplacian(f); });
    if (!(direct.entries == m.entries)) throw error("laplacian matrix disagrees with the form-level operator");
    return m;
}

/// Block matrix of d + delta on the graded basis (degree 0, 1, 2 concatenated).
inline OperatorMatrix assemble_dirac(const GridShape& shape, OrderingKind kind = OrderingKind::Canonical) {
    const auto basis = make_graded_ordering(shape, kind);
    OperatorMatrix m{"dirac", basis, basis, IntMatrix(basis.size(), basis.size())};
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& c = basis.labels[j];
        InhomogeneousForm e(shape);
        e.part(c.dim) = Form::indicator(shape, c);
        const auto image = dirac(e);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const auto& r = basis.labels[i];
            m.entries(i, j) = detail::to_entry(image.part(r.dim).component(r));
        }
    }
    detail::check_entries(m, {-1, 0, 1});
    return m;
}

/// Operator names accepted by assemble_named.
inline const std::vector<std::string>& operator_names() {
    static const std::vector<std::string> names{"d0", "d1", "delta1", "delta2", "lap0", "lap1", "lap2", "dirac"};
    return names;
}

inline OperatorMatrix assemble_named(const GridShape& shape, const std::string& op, OrderingKind kind) {
    if (op == "d0") return assemble_d(shape, 0, kind);
    if (op == "d1") return assemble_d(shape, 1, kind);
    if (op == "delta1") return assemble_delta(shape, 1, kind);
    if (op == "delta2") return assemble_delta(shape, 2, kind);
    if (op == "lap0") return assemble_laplacian(shape, 0, kind);
    if (op == "lap1") return assemble_laplacian(shape, 1, kind);
    if (op == "lap2") return assemble_laplacian(shape, 2, kind);
    if (op == "dirac") return assemble_dirac(shape, kind);
    throw error("unknown operator '" + op + "'");
}

}  // namespace dec
