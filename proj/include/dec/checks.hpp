#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dec/calculus.hpp"
#include "dec/hodge.hpp"
#include "dec/io.hpp"
#include "dec/random.hpp"

namespace dec::checks {

struct Options {
    int n = 3;
    int m = 3;
    std::uint64_t seed = 1;
    int trials = 100;
};

struct PropertyResult {
    std::string suite;
    std::string property;
    bool passed = true;
    double worst = 0.0;
    double tolerance = 0.0;
    int trials = 0;
    std::optional<io::json> counterexample;
};

struct Report {
    Options options;
    std::vector<PropertyResult> results;

    bool passed() const {
        return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"stokes", "leibniz", "adjoint", "star", "hodge"};
    return names;
}

namespace detail {

struct TrialOutcome {
    double error = 0.0;
    io::json witness;
};

/// Runs one property; each property draws from its own stream derived from the seed.
template <class Trial>
PropertyResult run_property(Report& report, const std::string& suite, const std::string& property, double tolerance,
                            Trial&& trial) {
    const auto& opt = report.options;
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(report.results.size())};
    Rng rng(seq);
    PropertyResult res{suite, property, true, 0.0, tolerance, opt.trials, std::nullopt};
    for (int t = 0; t < opt.trials; ++t) {
        TrialOutcome out = trial(rng);
        const double err = std::isnan(out.error) ? INFINITY : out.error;
        res.worst = std::max(res.worst, err);
        if (err > tolerance && res.passed) {
            res.passed = false;
            out.witness["trial"] = t;
            res.counterexample = std::move(out.witness);
        }
    }
    report.results.push_back(res);
    return res;
}

inline double max_diff(const Form& a, const Form& b) { return (a - b).max_abs(); }

/// Copies a torus form onto a plane window, filling the ghost ring periodically.
inline Form periodic_window_copy(const Form& w) {
    const GridShape& t = w.shape();
    Form out(GridShape::window(t.n, t.m), w.degree());
    for (int c = 0; c < w.component_count(); ++c)
        for (int s = 0; s <= t.m + 1; ++s)
            for (int k = 0; k <= t.n + 1; ++k) out.at(c, k, s) = w.at(c, k, s);
    return out;
}

/// The double shift (k, s) -> (k+1, s+1) applied to the basis, times (-1)^r.
inline Form signed_double_shift(const Form& w) {
    const GridShape& g = w.shape();
    Form out(g, w.degree());
    const double sign = w.degree() == 1 ? -1.0 : 1.0;
    for (int c = 0; c < w.component_count(); ++c)
        for (int s = 1; s <= g.m; ++s)
            for (int k = 1; k <= g.n; ++k) out.at(c, g.tau_k(k), g.tau_s(s)) = sign * w.at(c, k, s);
    return out;
}

}  // namespace detail

inline void run_leibniz(Report& report) {
    const auto g = GridShape::torus(report.options.n, report.options.m);
    detail::run_property(report, "leibniz", "d_d_zero", 0.0, [&](Rng& rng) -> detail::TrialOutcome {
        auto w0 = random_integer_form(g, 0, rng);
        auto w1 = random_integer_form(g, 1, rng);
        const double err = std::max(d(d(w0)).max_abs(), d(d(w1)).max_abs());
        return {err, {{"w0", io::to_json(w0)}, {"w1", io::to_json(w1)}}};
    });
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; p + q <= 2; ++q) {
            const std::string name = "leibniz_" + std::to_string(p) + std::to_string(q);
            detail::run_property(report, "leibniz", name, 0.0, [&](Rng& rng) -> detail::TrialOutcome {
                auto a = random_integer_form(g, p, rng);
                auto b = random_integer_form(g, q, rng);
                const Form lhs = d(cup(a, b));
                const Form rhs = cup(d(a), b) + (p % 2 ? -1.0 : 1.0) * cup(a, d(b));
                return {detail::max_diff(lhs, rhs), {{"a", io::to_json(a)}, {"b", io::to_json(b)}}};
            });
        }
}

inline void run_stokes(Report& report) {
    const auto win = GridShape::window(report.options.n, report.options.m);
    const auto tor = GridShape::torus(report.options.n, report.options.m);
    const Chain v = face_sum(win);
    for (int r = 0; r <= 1; ++r) {
        detail::run_property(report, "stokes", "stokes_r" + std::to_string(r), 1e-12,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto phi = random_normal_form(win, r, rng);
                                 auto omega = random_normal_form(win, r + 1, rng);
                                 const double err = std::abs(inner_product(d(phi), omega) - boundary_term(phi, omega, v) -
                                                             inner_product(phi, delta(omega)));
                                 return {err, {{"phi", io::to_json(phi)}, {"omega", io::to_json(omega)}}};
                             });
        detail::run_property(report, "stokes", "periodic_boundary_term_r" + std::to_string(r), 1e-12,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto phi = detail::periodic_window_copy(random_normal_form(tor, r, rng));
                                 auto omega = detail::periodic_window_copy(random_normal_form(tor, r + 1, rng));
                                 const double err = std::abs(boundary_term(phi, omega, v));
                                 return {err, {{"phi", io::to_json(phi)}, {"omega", io::to_json(omega)}}};
                             });
    }
}

inline void run_adjoint(Report& report) {
    const auto g = GridShape::torus(report.options.n, report.options.m);
    for (int r = 0; r <= 1; ++r)
        detail::run_property(report, "adjoint", "adjoint_r" + std::to_string(r), 1e-12,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto phi = random_normal_form(g, r, rng);
                                 auto omega = random_normal_form(g, r + 1, rng);
                                 const double err =
                                     std::abs(inner_product(d(phi), omega) - inner_product(phi, delta(omega)));
                                 return {err, {{"phi", io::to_json(phi)}, {"omega", io::to_json(omega)}}};
                             });
    detail::run_property(report, "adjoint", "delta_delta_zero", 0.0, [&](Rng& rng) -> detail::TrialOutcome {
        auto w1 = random_integer_form(g, 1, rng);
        auto w2 = random_integer_form(g, 2, rng);
        const double err = std::max(delta(delta(w2)).max_abs(), delta(delta(w1)).max_abs());
        return {err, {{"w1", io::to_json(w1)}, {"w2", io::to_json(w2)}}};
    });
    detail::run_property(report, "adjoint", "delta_closed_form_matches_star_form", 0.0,
                         [&](Rng& rng) -> detail::TrialOutcome {
                             auto w1 = random_integer_form(g, 1, rng);
                             auto w2 = random_integer_form(g, 2, rng);
                             const double err = std::max(detail::max_diff(delta(w1), delta_by_star(w1)),
                                                         detail::max_diff(delta(w2), delta_by_star(w2)));
                             return {err, {{"w1", io::to_json(w1)}, {"w2", io::to_json(w2)}}};
                         });
    detail::run_property(report, "adjoint", "pythagoras", 1e-10, [&](Rng& rng) -> detail::TrialOutcome {
        auto w0 = random_normal_form(g, 0, rng);
        auto w2 = random_normal_form(g, 2, rng);
        const Form a = d(w0), b = delta(w2);
        const double err = std::abs(norm_squared(a + b) - norm_squared(a) - norm_squared(b));
        return {err, {{"w0", io::to_json(w0)}, {"w2", io::to_json(w2)}}};
    });
}

inline void run_star(Report& report) {
    const auto g = GridShape::torus(report.options.n, report.options.m);
    for (int r = 0; r <= 2; ++r) {
        detail::run_property(report, "star", "star_star_shift_r" + std::to_string(r), 0.0,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto w = random_integer_form(g, r, rng);
                                 return {detail::max_diff(star(star(w)), detail::signed_double_shift(w)),
                                         {{"w", io::to_json(w)}}};
                             });
        detail::run_property(report, "star", "star_inverse_r" + std::to_string(r), 0.0,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto w = random_integer_form(g, r, rng);
                                 const double err = std::max(detail::max_diff(star_inv(star(w)), w),
                                                             detail::max_diff(star(star_inv(w)), w));
                                 return {err, {{"w", io::to_json(w)}}};
                             });
    }
}

inline void run_hodge(Report& report) {
    const auto g = GridShape::torus(report.options.n, report.options.m);
    for (int r = 0; r <= 2; ++r) {
        const std::string deg = "_r" + std::to_string(r);
        detail::run_property(report, "hodge", "laplacian_positive" + deg, 1e-10,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto w = random_normal_form(g, r, rng);
                                 return {std::max(0.0, -inner_product(laplacian(w), w)), {{"w", io::to_json(w)}}};
                             });
        detail::run_property(report, "hodge", "laplacian_self_adjoint" + deg, 1e-10,
                             [&](Rng& rng) -> detail::TrialOutcome {
                                 auto a = random_normal_form(g, r, rng);
                                 auto b = random_normal_form(g, r, rng);
                                 const double err =
                                     std::abs(inner_product(laplacian(a), b) - inner_product(a, laplacian(b)));
                                 return {err, {{"a", io::to_json(a)}, {"b", io::to_json(b)}}};
                             });
        detail::run_property(report, "hodge", "decomposition" + deg, 1e-10, [&](Rng& rng) -> detail::TrialOutcome {
            auto w = random_normal_form(g, r, rng);
            const auto h = decompose(w);
            const double err = std::max({h.residual_norm, std::abs(inner_product(h.exact, h.coexact)),
                                         std::abs(inner_product(h.exact, h.harmonic)),
                                         std::abs(inner_product(h.coexact, h.harmonic)), norm(d(h.harmonic)),
                                         norm(delta(h.harmonic))});
            return {err, {{"w", io::to_json(w)}}};
        });
    }
    detail::run_property(report, "hodge", "dirac_self_adjoint", 1e-10, [&](Rng& rng) -> detail::TrialOutcome {
        auto a = random_normal_inhomogeneous(g, rng);
        auto b = random_normal_inhomogeneous(g, rng);
        const double err = std::abs(inner_product(dirac(a), b) - inner_product(a, dirac(b)));
        return {err, {{"a", io::to_json(a)}, {"b", io::to_json(b)}}};
    });
}

/// Runs one named suite, or every suite for "all".
inline Report run(const std::string& suite, const Options& options) {
    Report report{options, {}};
    auto want = [&](const char* name) { return suite == "all" || suite == name; };
    bool known = suite == "all";
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw error("unknown suite '" + suite + "'");
    if (want("stokes")) run_stokes(report);
    if (want("leibniz")) run_leibniz(report);
    if (want("adjoint")) run_adjoint(report);
    if (want("star")) run_star(report);
    if (want("hodge")) run_hodge(report);
    return report;
}

/// Fixed-width PASS/FAIL table, followed by counterexamples of failing properties.
inline std::string format(const Report& report) {
    std::ostringstream out;
    const auto& o = report.options;
    out << "check n=" << o.n << " m=" << o.m << " seed=" << o.seed << " trials=" << o.trials << "\n";
    for (const auto& r : report.results) {
        out << (r.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(10) << r.suite << std::setw(40)
            << r.property << " worst=" << std::scientific << std::setprecision(3) << r.worst
            << " tol=" << r.tolerance << "\n";
    }
    for (const auto& r : report.results)
        if (r.counterexample) out << "counterexample " << r.suite << "/" << r.property << ": " << r.counterexample->dump() << "\n";
    out << (report.passed() ? "ALL PASS" : "FAILED") << "\n";
    return out.str();
}

}  // namespace dec::checks
