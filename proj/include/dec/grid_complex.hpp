#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dec/errors.hpp"

namespace dec {

enum class Topology { Torus, PlaneWindow };

/// Index arithmetic on one axis of the grid.
///
/// Indices are 1-based. On a torus they live in 1..extent and wrap; on a
/// plane window they are plain integers, with 0 and extent+1 forming the
/// ghost ring.
inline int wrap_index(int index, int extent) {
    int r = (index - 1) % extent;
    if (r < 0) r += extent;
    return r + 1;
}

inline int shift_tau(int index, int extent, Topology topology) {
    return topology == Topology::Torus ? wrap_index(index + 1, extent) : index + 1;
}

inline int shift_sigma(int index, int extent, Topology topology) {
    return topology == Topology::Torus ? wrap_index(index - 1, extent) : index - 1;
}

struct GridShape {
    int n = 1;
    int m = 1;
    Topology topology = Topology::Torus;

    GridShape() = default;
    GridShape(int n_, int m_, Topology t = Topology::Torus) : n(n_), m(m_), topology(t) {
        if (n < 1) throw error("n must be >= 1");
        if (m < 1) throw error("m must be >= 1");
    }

    static GridShape torus(int n, int m) { return {n, m, Topology::Torus}; }
    static GridShape window(int n, int m) { return {n, m, Topology::PlaneWindow}; }

    bool is_torus() const { return topology == Topology::Torus; }

    int tau_k(int k) const { return shift_tau(k, n, topology); }
    int tau_s(int s) const { return shift_tau(s, m, topology); }
    int sigma_k(int k) const { return shift_sigma(k, n, topology); }
    int sigma_s(int s) const { return shift_sigma(s, m, topology); }

    /// Storage extents: n x m on a torus, (n+2) x (m+2) with ghosts on a window.
    int extent_k() const { return is_torus() ? n : n + 2; }
    int extent_s() const { return is_torus() ? m : m + 2; }
    std::size_t cells() const { return static_cast<std::size_t>(extent_k()) * extent_s(); }

    /// Whether (k,s) addresses stored data. Always true on a torus.
    bool addressable(int k, int s) const {
        return is_torus() || (k >= 0 && k <= n + 1 && s >= 0 && s <= m + 1);
    }

    /// Flat offset, s-major with k varying fastest.
    std::size_t offset(int k, int s) const {
        if (is_torus()) {
            return static_cast<std::size_t>(wrap_index(s, m) - 1) * n + (wrap_index(k, n) - 1);
        }
        return static_cast<std::size_t>(s) * (n + 2) + k;
    }

    friend bool operator==(const GridShape&, const GridShape&) = default;
};

inline std::string to_string(Topology t) { return t == Topology::Torus ? "torus" : "plane_window"; }

/// A basis cell: vertex x_{k,s} (dim 0), edge e^dir_{k,s} (dim 1), face V_{k,s} (dim 2).
struct CellId {
    int dim = 0;
    int direction = 0;  // 1 or 2 for edges, 0 otherwise
    int k = 1;
    int s = 1;

    friend auto operator<=>(const CellId&, const CellId&) = default;
};

/// Builds a cell, reducing indices mod (n,m) on a torus so identified cells compare equal.
inline CellId make_cell(const GridShape& shape, int dim, int direction, int k, int s) {
    if (dim < 0 || dim > 2) throw error("cell dimension must be 0, 1 or 2");
    if (dim == 1 && direction != 1 && direction != 2) throw error("edge direction must be 1 or 2");
    if (dim != 1) direction = 0;
    if (shape.is_torus()) {
        k = wrap_index(k, shape.n);
        s = wrap_index(s, shape.m);
    }
    return {dim, direction, k, s};
}

inline CellId vertex(const GridShape& g, int k, int s) { return make_cell(g, 0, 0, k, s); }
inline CellId edge1(const GridShape& g, int k, int s) { return make_cell(g, 1, 1, k, s); }
inline CellId edge2(const GridShape& g, int k, int s) { return make_cell(g, 1, 2, k, s); }
inline CellId face(const GridShape& g, int k, int s) { return make_cell(g, 2, 0, k, s); }

inline std::string label(const CellId& c) {
    std::string idx = "(" + std::to_string(c.k) + "," + std::to_string(c.s) + ")";
    switch (c.dim) {
        case 0: return "x" + idx;
        case 1: return (c.direction == 1 ? "e1" : "e2") + idx;
        default: return "V" + idx;
    }
}

/// Integer combination of cells of one dimension. Zero coefficients are never stored.
class Chain {
public:
    using Coefficient = std::int64_t;

    explicit Chain(int dim = 0) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<CellId, Coefficient>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Coefficient coefficient(const CellId& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? 0 : it->second;
    }

    Chain& add(const CellId& c, Coefficient coeff) {
        if (c.dim != dim_) throw degree_mismatch("cell dimension does not match chain dimension");
        if (coeff == 0) return *this;
        auto [it, inserted] = terms_.try_emplace(c, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    Chain& operator+=(const Chain& other) {
        if (other.dim_ != dim_ && !other.empty()) throw degree_mismatch("adding chains of different dimension");
        for (const auto& [c, v] : other.terms_) add(c, v);
        return *this;
    }

    friend Chain operator+(Chain a, const Chain& b) { return a += b; }

    friend Chain operator*(Coefficient lambda, Chain a) {
        if (lambda == 0) return Chain(a.dim_);
        for (auto& [c, v] : a.terms_) v *= lambda;
        return a;
    }

    friend Chain operator-(Chain a, const Chain& b) { return a += (-1 * b); }

    friend bool operator==(const Chain&, const Chain&) = default;

private:
    int dim_;
    std::map<CellId, Coefficient> terms_;
};

/// The rectangle V = sum of V_{k,s} over k = 1..n, s = 1..m.
inline Chain face_sum(const GridShape& shape) {
    Chain v(2);
    for (int s = 1; s <= shape.m; ++s)
        for (int k = 1; k <= shape.n; ++k) v.add(face(shape, k, s), 1);
    return v;
}

/// Boundary of a chain; the boundary of a 0-chain is the empty 0-chain.
inline Chain boundary(const Chain& c, const GridShape& shape) {
    if (c.dim() == 0) return Chain(0);
    Chain out(c.dim() - 1);
    for (const auto& [cell, coeff] : c.terms()) {
        const int k = cell.k, s = cell.s;
        const int tk = shape.tau_k(k), ts = shape.tau_s(s);
        if (cell.dim == 1) {
            const int ek = cell.direction == 1 ? tk : k;
            const int es = cell.direction == 1 ? s : ts;
            out.add(vertex(shape, ek, es), coeff);
            out.add(vertex(shape, k, s), -coeff);
        } else {
            out.add(edge1(shape, k, s), coeff);
            out.add(edge2(shape, tk, s), coeff);
            out.add(edge1(shape, k, ts), -coeff);
            out.add(edge2(shape, k, s), -coeff);
        }
    }
    return out;
}

}  // namespace dec
