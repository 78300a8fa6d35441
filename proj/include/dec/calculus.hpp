#pragma once

#include <cmath>

#include "dec/errors.hpp"
#include "dec/form.hpp"
#include "dec/grid_complex.hpp"

namespace dec {

namespace detail {

/// Calls fn(k, s) over the cells d and delta write: all cells on a torus, the
/// interior 1..n x 1..m on a plane window.
template <class Fn>
void for_each_interior(const GridShape& g, Fn&& fn) {
    for (int s = 1; s <= g.m; ++s)
        for (int k = 1; k <= g.n; ++k) fn(k, s);
}

/// Calls fn(k, s) over every stored cell, ghost ring included.
template <class Fn>
void for_each_stored(const GridShape& g, Fn&& fn) {
    const int lo = g.is_torus() ? 1 : 0;
    const int hi_k = g.is_torus() ? g.n : g.n + 1;
    const int hi_s = g.is_torus() ? g.m : g.m + 1;
    for (int s = lo; s <= hi_s; ++s)
        for (int k = lo; k <= hi_k; ++k) fn(k, s);
}

inline void require_same_shape(const Form& a, const Form& b) {
    if (!(a.shape() == b.shape())) throw shape_mismatch("forms live on different shapes");
}

/// Adds value at (comp, k, s); outside the window a nonzero value is an error
/// when strict, and dropped otherwise.
inline void deposit(Form& out, int comp, int k, int s, double value, bool strict) {
    if (out.shape().addressable(k, s)) {
        out.at(comp, k, s) += value;
    } else if (strict && value != 0.0) {
        throw star_undefined_on_window_boundary("Hodge star moves a nonzero component past the ghost ring at (" +
                                                std::to_string(k) + "," + std::to_string(s) + ")");
    }
}

inline Form star_impl(const Form& w, bool strict) {
    const GridShape& g = w.shape();
    Form out(g, 2 - w.degree());
    for_each_stored(g, [&](int k, int s) {
        switch (w.degree()) {
            case 0: deposit(out, 0, k, s, w(k, s), strict); break;
            case 1:
                deposit(out, 1, g.tau_k(k), s, w.u(k, s), strict);
                deposit(out, 0, k, g.tau_s(s), -w.v(k, s), strict);
                break;
            default: deposit(out, 0, g.tau_k(k), g.tau_s(s), w(k, s), strict); break;
        }
    });
    return out;
}

}  // namespace detail

/// Coboundary. Degree 0 -> 1, 1 -> 2; a 2-form maps to the annihilated zero.
inline Form d(const Form& w) {
    const GridShape& g = w.shape();
    if (w.degree() == 2) return Form::annihilated(g);
    Form out(g, w.degree() + 1);
    if (w.degree() == 0) {
        detail::for_each_interior(g, [&](int k, int s) {
            out.u(k, s) = w(g.tau_k(k), s) - w(k, s);
            out.v(k, s) = w(k, g.tau_s(s)) - w(k, s);
        });
    } else {
        detail::for_each_interior(g, [&](int k, int s) {
            out(k, s) = (w.v(g.tau_k(k), s) - w.v(k, s)) - (w.u(k, g.tau_s(s)) - w.u(k, s));
        });
    }
    return out;
}

/// Cup product, extended cellwise from the basis multiplication table.
/// Products of total degree above 2 vanish and are returned annihilated.
inline Form cup(const Form& a, const Form& b) {
    detail::require_same_shape(a, b);
    const GridShape& g = a.shape();
    const int p = a.degree(), q = b.degree();
    if (p + q > 2 || a.is_annihilated() || b.is_annihilated()) return Form::annihilated(g);
    Form out(g, p + q);
    detail::for_each_stored(g, [&](int k, int s) {
        const int tk = g.tau_k(k), ts = g.tau_s(s);
        if (p == 0 && q == 1) {
            out.u(k, s) = a(k, s) * b.u(k, s);
            out.v(k, s) = a(k, s) * b.v(k, s);
        } else if (p == 0) {
            out(k, s) = a(k, s) * b(k, s);
        } else if (p == 1 && q == 0) {
            out.u(k, s) = a.u(k, s) * b.get(0, tk, s);
            out.v(k, s) = a.v(k, s) * b.get(0, k, ts);
        } else if (p == 1) {
            out(k, s) = a.u(k, s) * b.get(1, tk, s) - a.v(k, s) * b.get(0, k, ts);
        } else {
            out(k, s) = a(k, s) * b.get(0, tk, ts);
        }
    });
    return out;
}

/// Hodge star: *x = V, *e1 = e2 shifted by tau in k, *e2 = -e1 shifted by tau
/// in s, *V = x shifted by tau in both.
inline Form star(const Form& w) { return detail::star_impl(w, true); }

inline Form star_inv(const Form& w) {
    const GridShape& g = w.shape();
    Form out(g, 2 - w.degree());
    detail::for_each_stored(g, [&](int k, int s) {
        switch (w.degree()) {
            case 0: detail::deposit(out, 0, g.sigma_k(k), g.sigma_s(s), w(k, s), true); break;
            case 1:
                detail::deposit(out, 1, k, g.sigma_s(s), -w.u(k, s), true);
                detail::deposit(out, 0, g.sigma_k(k), s, w.v(k, s), true);
                break;
            default: detail::deposit(out, 0, k, s, w(k, s), true); break;
        }
    });
    return out;
}

/// Codifferential from the closed difference formulas. A 0-form maps to the
/// zero 0-form; the annihilated 2-form maps to the zero 2-form.
inline Form delta(const Form& w) {
    const GridShape& g = w.shape();
    if (w.is_annihilated()) return Form(g, 2);
    if (w.degree() == 0) return Form(g, 0);
    Form out(g, w.degree() - 1);
    if (w.degree() == 1) {
        detail::for_each_interior(g, [&](int k, int s) {
            out(k, s) = -(w.u(k, s) - w.u(g.sigma_k(k), s)) - (w.v(k, s) - w.v(k, g.sigma_s(s)));
        });
    } else {
        detail::for_each_interior(g, [&](int k, int s) {
            out.u(k, s) = w(k, s) - w(k, g.sigma_s(s));
            out.v(k, s) = -(w(k, s) - w(g.sigma_k(k), s));
        });
    }
    return out;
}

/// Codifferential as (-1)^{r+1} *^{-1} d * on an (r+1)-form.
inline Form delta_by_star(const Form& w) {
    if (w.is_annihilated()) return Form(w.shape(), 2);
    if (w.degree() == 0) return Form(w.shape(), 0);
    Form out = star_inv(d(star(w)));
    if (w.degree() == 1) out *= -1.0;
    return out;
}

/// Laplacian d delta + delta d, degree preserving.
inline Form laplacian(const Form& w) {
    switch (w.degree()) {
        case 0: return delta(d(w));
        case 1: return d(delta(w)) + delta(d(w));
        default: return d(delta(w));
    }
}

/// Inner product over the rectangle V: the componentwise sum over 1..n x 1..m.
/// Forms of different degrees are orthogonal.
inline double inner_product(const Form& a, const Form& b) {
    detail::require_same_shape(a, b);
    if (a.degree() != b.degree()) return 0.0;
    double total = 0.0;
    for (int c = 0; c < a.component_count(); ++c)
        detail::for_each_interior(a.shape(), [&](int k, int s) { total += a.at(c, k, s) * b.at(c, k, s); });
    return total;
}

/// The same inner product evaluated from its definition <V, a cup *b>.
inline double inner_product_by_definition(const Form& a, const Form& b, const Chain& window) {
    detail::require_same_shape(a, b);
    if (a.degree() != b.degree()) return 0.0;
    // V reaches at most one cell past the interior, where the clipped star is exact.
    return pairing(window, cup(a, detail::star_impl(b, false)));
}

inline double norm_squared(const Form& a) { return inner_product(a, a); }
inline double norm(const Form& a) { return std::sqrt(norm_squared(a)); }

/// <dV, phi cup *omega>, the boundary contribution in the discrete Stokes identity.
inline double boundary_term(const Form& phi, const Form& omega, const Chain& window) {
    detail::require_same_shape(phi, omega);
    if (omega.degree() != phi.degree() + 1) throw degree_mismatch("boundary_term needs deg omega = deg phi + 1");
    // Cells of *omega pushed past the ghost ring lie outside the support of dV.
    return pairing(boundary(window, phi.shape()), cup(phi, detail::star_impl(omega, false)));
}

// Inhomogeneous forms.

inline InhomogeneousForm d(const InhomogeneousForm& w) {
    const GridShape& g = w.shape();
    return {Form(g, 0), d(w.part(0)), d(w.part(1))};
}

inline InhomogeneousForm delta(const InhomogeneousForm& w) {
    const GridShape& g = w.shape();
    return {delta(w.part(1)), delta(w.part(2)), Form(g, 2)};
}

/// Hodge-Dirac operator d + delta.
inline InhomogeneousForm dirac(const InhomogeneousForm& w) { return d(w) + delta(w); }

inline double inner_product(const InhomogeneousForm& a, const InhomogeneousForm& b) {
    double total = 0.0;
    for (int r = 0; r < 3; ++r) total += inner_product(a.part(r), b.part(r));
    return total;
}

inline double norm_squared(const InhomogeneousForm& a) { return inner_product(a, a); }
inline double norm(const InhomogeneousForm& a) { return std::sqrt(norm_squared(a)); }

}  // namespace dec
