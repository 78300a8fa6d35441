#pragma once

#include <cstdint>
#include <random>

#include "dec/form.hpp"

namespace dec {

using Rng = std::mt19937_64;

/// Form with integer components drawn uniformly from {-3, ..., 3} on every stored cell.
inline Form random_integer_form(const GridShape& shape, int degree, Rng& rng) {
    std::uniform_int_distribution<int> dist(-3, 3);
    Form w(shape, degree);
    for (int c = 0; c < w.component_count(); ++c)
        for (double& x : w.data(c)) x = dist(rng);
    return w;
}

/// Form with standard normal components on every stored cell.
inline Form random_normal_form(const GridShape& shape, int degree, Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Form w(shape, degree);
    for (int c = 0; c < w.component_count(); ++c)
        for (double& x : w.data(c)) x = dist(rng);
    return w;
}

inline InhomogeneousForm random_normal_inhomogeneous(const GridShape& shape, Rng& rng) {
    auto w0 = random_normal_form(shape, 0, rng);
    auto w1 = random_normal_form(shape, 1, rng);
    auto w2 = random_normal_form(shape, 2, rng);
    return {std::move(w0), std::move(w1), std::move(w2)};
}

}  // namespace dec
