#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "dec/errors.hpp"
#include "dec/grid_complex.hpp"

namespace dec {

/// A discrete r-form (cochain) with real components.
///
/// Degree 0 and 2 forms carry one array; degree 1 forms carry two, u for the
/// e1 direction and v for e2. Arrays are n x m on a torus and (n+2) x (m+2)
/// on a plane window, where indices 0 and n+1 (m+1) form the ghost ring.
/// A plane-window form is read as a cochain supported on the stored cells,
/// so reads outside the ghost ring return zero.
///
/// The coboundary of a 2-form is represented by a degree-2 zero form with
/// the `annihilated` flag set.
class Form {
public:
    Form(const GridShape& shape, int degree) : shape_(shape), degree_(degree) {
        if (degree < 0 || degree > 2) throw error("form degree must be 0, 1 or 2");
        comps_[0].assign(shape.cells(), 0.0);
        if (degree == 1) comps_[1].assign(shape.cells(), 0.0);
    }

    static Form annihilated(const GridShape& shape) {
        Form f(shape, 2);
        f.annihilated_ = true;
        return f;
    }

    /// Basis form dual to a cell (x^{k,s}, e_i^{k,s}, V^{k,s}).
    static Form indicator(const GridShape& shape, const CellId& cell) {
        Form f(shape, cell.dim);
        f.at(component_of(cell), cell.k, cell.s) = 1.0;
        return f;
    }

    static int component_of(const CellId& cell) { return cell.dim == 1 ? cell.direction - 1 : 0; }

    const GridShape& shape() const { return shape_; }
    int degree() const { return degree_; }
    bool is_annihilated() const { return annihilated_; }
    int component_count() const { return degree_ == 1 ? 2 : 1; }

    std::span<double> data(int comp = 0) { return comps_.at(comp); }
    std::span<const double> data(int comp = 0) const { return comps_.at(comp); }

    double& at(int comp, int k, int s) {
        check_access(comp, k, s);
        return comps_[comp][shape_.offset(k, s)];
    }
    double at(int comp, int k, int s) const {
        check_access(comp, k, s);
        return comps_[comp][shape_.offset(k, s)];
    }

    /// Like `at`, but zero for cells outside a plane window.
    double get(int comp, int k, int s) const {
        if (!shape_.addressable(k, s)) return 0.0;
        return at(comp, k, s);
    }

    double& operator()(int k, int s) { return at(0, k, s); }
    double operator()(int k, int s) const { return at(0, k, s); }
    double& u(int k, int s) { return at(0, k, s); }
    double u(int k, int s) const { return at(0, k, s); }
    double& v(int k, int s) { return at(1, k, s); }
    double v(int k, int s) const { return at(1, k, s); }

    double component(const CellId& cell) const { return get(component_of(cell), cell.k, cell.s); }

    bool is_zero() const {
        for (int c = 0; c < component_count(); ++c)
            for (double x : comps_[c])
                if (x != 0.0) return false;
        return true;
    }

    double max_abs() const {
        double r = 0.0;
        for (int c = 0; c < component_count(); ++c)
            for (double x : comps_[c]) r = std::max(r, std::abs(x));
        return r;
    }

    Form& operator+=(const Form& o) {
        check_compatible(o);
        for (int c = 0; c < component_count(); ++c)
            for (std::size_t i = 0; i < comps_[c].size(); ++i) comps_[c][i] += o.comps_[c][i];
        annihilated_ = annihilated_ && o.annihilated_;
        return *this;
    }
    Form& operator-=(const Form& o) {
        check_compatible(o);
        for (int c = 0; c < component_count(); ++c)
            for (std::size_t i = 0; i < comps_[c].size(); ++i) comps_[c][i] -= o.comps_[c][i];
        annihilated_ = annihilated_ && o.annihilated_;
        return *this;
    }
    Form& operator*=(double a) {
        for (auto& comp : comps_)
            for (double& x : comp) x *= a;
        return *this;
    }

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) { return a *= -1.0; }
    friend Form operator*(double a, Form f) { return f *= a; }

    friend bool operator==(const Form& a, const Form& b) {
        return a.shape_ == b.shape_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }

private:
    void check_access(int comp, int k, int s) const {
        if (comp < 0 || comp >= component_count()) throw std::out_of_range("form component index");
        if (!shape_.addressable(k, s)) throw std::out_of_range("form index outside plane window");
    }
    void check_compatible(const Form& o) const {
        if (!(o.shape_ == shape_)) throw shape_mismatch("forms live on different shapes");
        if (o.degree_ != degree_) throw degree_mismatch("forms have different degrees");
    }

    GridShape shape_;
    int degree_;
    bool annihilated_ = false;
    std::array<std::vector<double>, 2> comps_;
};

/// Mixed-degree form (w0, w1, w2) on a common shape.
class InhomogeneousForm {
public:
    explicit InhomogeneousForm(const GridShape& shape)
        : parts_{Form(shape, 0), Form(shape, 1), Form(shape, 2)} {}

    InhomogeneousForm(Form w0, Form w1, Form w2) : parts_{std::move(w0), std::move(w1), std::move(w2)} {
        for (int r = 0; r < 3; ++r)
            if (parts_[r].degree() != r) throw degree_mismatch("inhomogeneous part has wrong degree");
        if (!(parts_[1].shape() == parts_[0].shape()) || !(parts_[2].shape() == parts_[0].shape()))
            throw shape_mismatch("inhomogeneous parts live on different shapes");
    }

    const GridShape& shape() const { return parts_[0].shape(); }
    Form& part(int r) { return parts_.at(r); }
    const Form& part(int r) const { return parts_.at(r); }

    InhomogeneousForm& operator+=(const InhomogeneousForm& o) {
        for (int r = 0; r < 3; ++r) parts_[r] += o.parts_[r];
        return *this;
    }
    InhomogeneousForm& operator-=(const InhomogeneousForm& o) {
        for (int r = 0; r < 3; ++r) parts_[r] -= o.parts_[r];
        return *this;
    }
    friend InhomogeneousForm operator+(InhomogeneousForm a, const InhomogeneousForm& b) { return a += b; }
    friend InhomogeneousForm operator-(InhomogeneousForm a, const InhomogeneousForm& b) { return a -= b; }
    friend InhomogeneousForm operator*(double a, InhomogeneousForm f) {
        for (auto& p : f.parts_) p *= a;
        return f;
    }
    friend bool operator==(const InhomogeneousForm&, const InhomogeneousForm&) = default;

private:
    std::array<Form, 3> parts_;
};

/// Chain/cochain pairing, bilinear extension of the Kronecker rule on basis cells.
inline double pairing(const Chain& c, const Form& w) {
    if (c.empty()) return 0.0;
    if (c.dim() != w.degree()) throw degree_mismatch("chain dimension differs from form degree");
    double total = 0.0;
    for (const auto& [cell, coeff] : c.terms()) total += static_cast<double>(coeff) * w.component(cell);
    return total;
}

}  // namespace dec
