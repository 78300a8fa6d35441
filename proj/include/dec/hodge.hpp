#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "dec/calculus.hpp"
#include "dec/errors.hpp"
#include "dec/exact_linalg.hpp"
#include "dec/form.hpp"
#include "dec/operators.hpp"

namespace dec {

/// Eigenvalues of a torus Laplacian, ascending.
struct Spectrum {
    std::vector<double> eigenvalues;
    int multiplicity_zero = 0;
    /// Smallest eigenvalue above the kernel threshold; 0 when the Laplacian vanishes.
    double lambda_min_positive = 0.0;
    double kernel_threshold = 0.0;
};

struct HodgeDecomposition {
    Form exact;
    Form coexact;
    Form harmonic;
    double residual_norm = 0.0;
};

struct EnergyEstimate {
    double lhs = 0.0;
    double rhs = 0.0;
    double c_used = 0.0;
};

namespace detail {

/// Relative cutoff separating kernel eigenvalues from the rest.
inline constexpr double kernel_relative_threshold = 1e-9;

/// Eigendecomposition of a symmetric operator matrix in canonical ordering,
/// with its pseudo-inverse cutoff.
struct SymmetricFactorization {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
    double threshold = 0.0;

    explicit SymmetricFactorization(const IntMatrix& a) {
        Eigen::MatrixXd m(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = static_cast<double>(a(i, j));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
        if (solver.info() != Eigen::Success) throw solver_failure("symmetric eigensolver did not converge");
        vectors = solver.eigenvectors();
        values = solver.eigenvalues();
        const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
        threshold = kernel_relative_threshold * std::max(scale, 1.0);
    }

    /// Pseudo-inverse applied to x.
    Eigen::VectorXd solve(const Eigen::VectorXd& x) const {
        Eigen::VectorXd coeffs = vectors.transpose() * x;
        for (Eigen::Index i = 0; i < coeffs.size(); ++i)
            coeffs(i) = std::abs(values(i)) > threshold ? coeffs(i) / values(i) : 0.0;
        return vectors * coeffs;
    }
};

struct LaplacianData {
    BasisOrdering basis;
    SymmetricFactorization factorization;
    std::vector<Form> harmonic;
};

/// Orthonormalizes the exact kernel basis with two passes of modified Gram-Schmidt.
inline std::vector<Form> orthonormal_forms(const std::vector<exact::RationalVector>& kernel, const GridShape& shape,
                                           const BasisOrdering& basis) {
    std::vector<std::vector<double>> q;
    for (const auto& v : kernel) {
        std::vector<double> x(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) x[i] = static_cast<double>(v[i]);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : q) {
                double dot = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) dot += e[i] * x[i];
                for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * e[i];
            }
        double nrm = 0.0;
        for (double xi : x) nrm += xi * xi;
        nrm = std::sqrt(nrm);
        for (double& xi : x) xi /= nrm;
        q.push_back(std::move(x));
    }
    std::vector<Form> out;
    for (const auto& x : q) out.push_back(devectorize(x, shape, basis));
    return out;
}

/// Immutable per-(n, m, degree) data, built at most once and shared by readers.
/// Degree 3 holds the Dirac operator on the graded basis.
template <class T, class Build>
std::shared_ptr<const T> cached(const GridShape& shape, int degree, Build&& build) {
    struct Slot {
        std::once_flag once;
        std::shared_ptr<const T> value;
    };
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<Slot>> slots;
    std::shared_ptr<Slot> slot;
    {
        std::lock_guard lock(mutex);
        auto& entry = slots[{shape.n, shape.m, degree}];
        if (!entry) entry = std::make_shared<Slot>();
        slot = entry;
    }
    std::call_once(slot->once, [&] { slot->value = std::make_shared<const T>(build()); });
    return slot->value;
}

inline void require_torus(const GridShape& shape) {
    if (!shape.is_torus()) throw error("operation is defined on the torus only");
}

inline std::shared_ptr<const LaplacianData> laplacian_data(const GridShape& shape, int degree) {
    require_torus(shape);
    return cached<LaplacianData>(shape, degree, [&] {
        const auto lap = assemble_laplacian(shape, degree);
        auto kernel = exact::null_space(lap.entries);
        return LaplacianData{lap.rows, SymmetricFactorization(lap.entries),
                             orthonormal_forms(kernel, shape, lap.rows)};
    });
}

inline std::shared_ptr<const SymmetricFactorization> dirac_factorization(const GridShape& shape) {
    require_torus(shape);
    return cached<SymmetricFactorization>(shape, 3,
                                          [&] { return SymmetricFactorization(assemble_dirac(shape).entries); });
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> from_eigen(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace detail

/// Orthonormal basis of the harmonic r-forms (kernel of the degree-r Laplacian).
inline std::vector<Form> harmonic_basis(const GridShape& shape, int degree) {
    return detail::laplacian_data(shape, degree)->harmonic;
}

/// Orthogonal projection onto the harmonic forms.
inline Form harmonic_projection(const Form& w) {
    Form out(w.shape(), w.degree());
    for (const auto& h : harmonic_basis(w.shape(), w.degree())) out += inner_product(w, h) * h;
    return out;
}

inline InhomogeneousForm harmonic_projection(const InhomogeneousForm& w) {
    return {harmonic_projection(w.part(0)), harmonic_projection(w.part(1)), harmonic_projection(w.part(2))};
}

/// Solves Laplacian g = w on the orthogonal complement of the harmonic forms.
inline Form green(const Form& w) {
    const auto data = detail::laplacian_data(w.shape(), w.degree());
    const auto g = data->factorization.solve(detail::to_eigen(vectorize(w, data->basis)));
    return devectorize(detail::from_eigen(g), w.shape(), data->basis);
}

/// Splits w into exact + coexact + harmonic parts.
inline HodgeDecomposition decompose(const Form& w) {
    detail::require_torus(w.shape());
    const GridShape& g = w.shape();
    const int r = w.degree();
    Form harmonic = harmonic_projection(w);
    const Form potential = green(w - harmonic);
    Form exact = r > 0 ? d(delta(potential)) : Form(g, r);
    Form coexact = r < 2 ? delta(d(potential)) : Form(g, r);
    const double residual = norm(w - exact - coexact - harmonic);
    return {std::move(exact), std::move(coexact), std::move(harmonic), residual};
}

inline Spectrum spectrum(const GridShape& shape, int degree) {
    const auto data = detail::laplacian_data(shape, degree);
    const auto& f = data->factorization;
    Spectrum sp;
    sp.kernel_threshold = f.threshold;
    sp.eigenvalues.assign(f.values.data(), f.values.data() + f.values.size());
    for (double lambda : sp.eigenvalues) {
        if (std::abs(lambda) <= f.threshold) {
            ++sp.multiplicity_zero;
        } else if (sp.lambda_min_positive == 0.0 && lambda > 0.0) {
            sp.lambda_min_positive = lambda;
        }
    }
    return sp;
}

/// Relative size of the harmonic component tolerated by solve_dirac.
inline constexpr double harmonic_relative_tolerance = 1e-8;

/// The unique solution of (d + delta) omega = F orthogonal to the harmonic forms.
inline InhomogeneousForm solve_dirac(const InhomogeneousForm& f) {
    const GridShape& g = f.shape();
    detail::require_torus(g);
    const double harmonic_norm = norm(harmonic_projection(f));
    if (harmonic_norm > harmonic_relative_tolerance * norm(f))
        throw not_in_range("F has harmonic component (norm " + std::to_string(harmonic_norm) + ")");
    const auto basis = make_graded_ordering(g, OrderingKind::Canonical);
    const auto x = detail::dirac_factorization(g)->solve(detail::to_eigen(vectorize(f, basis)));
    return devectorize_graded(detail::from_eigen(x), g, basis);
}

/// Smallest positive eigenvalue of the block Laplacian (the square of d + delta).
inline double dirac_squared_gap(const GridShape& shape) {
    double gap = 0.0;
    for (int r = 0; r < 3; ++r) {
        const double l = spectrum(shape, r).lambda_min_positive;
        if (l > 0.0 && (gap == 0.0 || l < gap)) gap = l;
    }
    return gap;
}

/// Both sides of |omega|^2 <= c (|d omega|^2 + |delta omega|^2) + |harmonic part|^2,
/// with c the reciprocal of the spectral gap (0 when there is no positive eigenvalue).
inline EnergyEstimate energy_estimate_check(const InhomogeneousForm& omega) {
    detail::require_torus(omega.shape());
    const double gap = dirac_squared_gap(omega.shape());
    const double c = gap > 0.0 ? 1.0 / gap : 0.0;
    const double lhs = norm_squared(omega);
    const double rhs =
        c * (norm_squared(d(omega)) + norm_squared(delta(omega))) + norm_squared(harmonic_projection(omega));
    return {lhs, rhs, c};
}

}  // namespace dec
