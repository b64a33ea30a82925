#pragma once

// Data-dependent loading factor: the linearized Lagrangian update and the
// fixed-count iteration built on it.
//
// Around a loading level the LSMI weights are approximated to first order as
//   w(alpha) ~= w~ - alpha v~,   w~ = A^{-1} s,  v~ = A^{-1} w~,
// and alpha is chosen to minimize the quadratic output power under the
// distortionless constraint w^H s = 1. Solving for the Lagrange multiplier
// gives closed forms for (lambda, alpha).

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>

#include "lsmi/filters.hpp"
#include "lsmi/numerics.hpp"
#include "lsmi/types.hpp"

namespace lsmi {

/// An inner product a^H b with |a^H b| <= kDegeneracyTolerance * ||a|| ||b||
/// is treated as zero when it appears in a denominator.
inline constexpr double kDegeneracyTolerance = 1e-14;
/// Largest relative imaginary part tolerated on lambda and alpha.
inline constexpr double kRealnessTolerance = 1e-8;
/// Default upper bound on alpha, in units of trace(R)/N.
inline constexpr double kAlphaMaxRatio = 100.0;

/// What to do when the closed-form alpha comes out negative.
enum class NegativeAlphaPolicy {
    Reflect,  ///< use |alpha|; w(-a) and w(|a|) both tend to s for large a
    Clamp,    ///< use 0
};

struct AlphaBounds {
    double alpha_max = std::numeric_limits<double>::infinity();
    NegativeAlphaPolicy negative = NegativeAlphaPolicy::Reflect;
};

/// The four inner products the update needs, plus the two cross terms.
template <typename Real>
struct LinearizationScalars {
    std::complex<Real> ws;  ///< w~^H s
    std::complex<Real> ww;  ///< w~^H w~
    std::complex<Real> vs;  ///< v~^H s
    std::complex<Real> vw;  ///< v~^H w~
    std::complex<Real> wv;  ///< w~^H v~
    std::complex<Real> sv;  ///< s^H v~
};

template <typename Real>
LinearizationScalars<Real> linearization_scalars(const Vector<Real>& w, const Vector<Real>& v,
                                                 const Vector<Real>& s) {
    if (w.size() != s.size() || v.size() != s.size()) {
        throw DimensionMismatch("linearization_scalars: vector lengths differ");
    }
    return {inner(w, s), inner(w, w), inner(v, s), inner(v, w), inner(w, v), inner(s, v)};
}

/// Lagrangian cost of the linearized problem at loading alpha.
template <typename Real>
std::complex<Real> lagrangian_cost(const LinearizationScalars<Real>& k, Real lambda, Real alpha) {
    return k.ws - alpha * k.ww - alpha * k.vs + alpha * alpha * k.vw + lambda * (k.ws - alpha * k.vs - Real(1));
}

/// d/d(alpha) of lagrangian_cost.
template <typename Real>
std::complex<Real> lagrangian_cost_derivative(const LinearizationScalars<Real>& k, Real lambda, Real alpha) {
    return -k.ww - k.vs + Real(2) * alpha * k.vw - lambda * k.vs;
}

template <typename Real>
struct LinearizedStep {
    Real lambda;
    Real alpha_raw;  ///< closed-form stationary point, before bounds
    Real alpha;      ///< alpha_raw after the negative-alpha policy and the upper clamp
    bool adjusted;   ///< alpha != alpha_raw
};

namespace detail {

template <typename Real>
Real checked_real(std::complex<Real> z, const char* name) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DegenerateGeometry(std::string(name) + " is not finite");
    }
    if (std::abs(z.imag()) > Real(kRealnessTolerance) * std::abs(z)) {
        throw DegenerateGeometry(std::string(name) + " has a non-negligible imaginary part");
    }
    return z.real();
}

}  // namespace detail

/// Closed-form (lambda, alpha) from the linearized constrained problem.
template <typename Real>
LinearizedStep<Real> linearized_step(const Vector<Real>& w, const Vector<Real>& v, const SteeringVector<Real>& s,
                                     const AlphaBounds& bounds = {}) {
    const auto k = linearization_scalars(w, v, s.values());
    const Real sv_norm = std::norm(k.sv);
    const Real tol = Real(kDegeneracyTolerance);
    if (!(std::abs(k.vw) > tol * v.norm() * w.norm())) throw DegenerateGeometry("v~^H w~ vanishes");
    if (!(std::sqrt(sv_norm) > tol * s.values().norm() * v.norm())) throw DegenerateGeometry("s^H v~ vanishes");

    const std::complex<Real> lambda_c =
        Real(-1) - (Real(2) * k.wv * (Real(1) - k.ws) + k.ww * k.vs) / sv_norm;
    const Real lambda = detail::checked_real(lambda_c, "lambda");
    // Use the realized lambda so the returned pair is self-consistent.
    const std::complex<Real> alpha_c = (k.ww + k.vs + lambda * k.vs) / (Real(2) * k.vw);
    const Real alpha_raw = detail::checked_real(alpha_c, "alpha");

    Real alpha = alpha_raw;
    if (alpha < Real(0)) alpha = bounds.negative == NegativeAlphaPolicy::Reflect ? -alpha : Real(0);
    alpha = std::min(alpha, static_cast<Real>(bounds.alpha_max));
    return {lambda, alpha_raw, alpha, alpha != alpha_raw};
}

struct LoadingOptions {
    NegativeAlphaPolicy negative = NegativeAlphaPolicy::Reflect;
    /// Upper bound on alpha; defaults to kAlphaMaxRatio * trace(R)/N.
    std::optional<double> alpha_max;
};

/// Runs `iterations` linearized updates starting from alpha_1 = noise_power and
/// returns the trace with weights (R + alpha_T I)^{-1} s.
template <typename Real>
LoadingTrace<Real> iterative_loading(const CovarianceMatrix<Real>& r, const SteeringVector<Real>& s,
                                     Real noise_power, std::size_t iterations, const LoadingOptions& options = {}) {
    if (iterations < 1) throw NumericalError("iterative_loading: at least one iteration is required");
    if (!(noise_power > Real(0))) throw NumericalError("iterative_loading: noise power must be positive");
    if (r.dim() != s.size()) throw DimensionMismatch("iterative_loading: covariance and steering sizes differ");

    const AlphaBounds bounds{
        options.alpha_max.value_or(kAlphaMaxRatio * static_cast<double>(r.matrix.trace().real()) /
                                   static_cast<double>(r.dim())),
        options.negative};

    std::vector<Real> alphas{noise_power};
    std::vector<Real> lambdas;
    std::vector<bool> adjusted;
    alphas.reserve(iterations + 1);
    lambdas.reserve(iterations);
    adjusted.reserve(iterations);

    for (std::size_t i = 1; i <= iterations; ++i) {
        const auto factor = hermitian_factor(add_scaled_identity(r.matrix, alphas.back()));
        const Vector<Real> w = solve(factor, s.values());
        const Vector<Real> v = solve(factor, w);
        LinearizedStep<Real> step;
        try {
            step = linearized_step(w, v, s, bounds);
        } catch (const DegenerateGeometry& e) {
            throw DegenerateGeometry(e.what(), i);
        }
        lambdas.push_back(step.lambda);
        alphas.push_back(step.alpha);
        adjusted.push_back(step.adjusted);
    }

    auto weights = loaded_weights(r, alphas[iterations - 1], s);
    return {std::move(alphas), std::move(lambdas), std::move(adjusted), std::move(weights), iterations};
}

}  // namespace lsmi
