#pragma once

// Sample covariance, loaded / optimum filter weights and output SINR.

#include <cmath>

#include "lsmi/numerics.hpp"
#include "lsmi/types.hpp"

namespace lsmi {

/// Carlson's fixed loading level, in units of the white-noise power.
inline constexpr double kFixedLoadingRatio = 10.0;

/// (1/M) X X^H, tagged as a sample covariance. The result is exactly Hermitian.
template <typename Real>
CovarianceMatrix<Real> sample_covariance(const TrainingSample<Real>& sample, Real noise_power = Real(1)) {
    if (sample.m() < 1 || sample.n() < 1) throw EmptySample();
    Matrix<Real> r = sample.snapshots * sample.snapshots.adjoint() / Real(sample.m());
    r = (r + r.adjoint()).eval() / Real(2);
    return {std::move(r), CovarianceRole::SampleR, noise_power};
}

/// (R + alpha I)^{-1} s, unnormalized.
template <typename Real>
WeightVector<Real> loaded_weights(const CovarianceMatrix<Real>& r, Real alpha, const SteeringVector<Real>& s) {
    if (r.dim() != s.size()) throw DimensionMismatch("loaded_weights: covariance and steering sizes differ");
    if (!(alpha >= Real(0))) throw NumericalError("loaded_weights: loading factor must be non-negative");
    const auto factor = hermitian_factor(add_scaled_identity(r.matrix, alpha));
    return WeightVector<Real>(solve(factor, s.values()));
}

/// R^{-1} s, the SINR-optimal weights for a known covariance.
template <typename Real>
WeightVector<Real> optimal_weights(const CovarianceMatrix<Real>& r, const SteeringVector<Real>& s) {
    if (r.dim() != s.size()) throw DimensionMismatch("optimal_weights: covariance and steering sizes differ");
    return WeightVector<Real>(solve(hermitian_factor(r.matrix), s.values()));
}

/// loaded_weights at alpha = 10 * noise power.
template <typename Real>
WeightVector<Real> fixed_loading_weights(const CovarianceMatrix<Real>& r, const SteeringVector<Real>& s,
                                         Real noise_power) {
    if (!(noise_power > Real(0))) throw NumericalError("fixed_loading_weights: noise power must be positive");
    return loaded_weights(r, Real(kFixedLoadingRatio) * noise_power, s);
}

/// Output SINR  signal_power * |w^H s|^2 / (w^H R w), in linear units.
template <typename Real>
Real rayleigh_quotient(const WeightVector<Real>& w, const SteeringVector<Real>& s, const CovarianceMatrix<Real>& r,
                       Real signal_power) {
    if (w.size() != s.size() || r.dim() != w.size()) {
        throw DimensionMismatch("rayleigh_quotient: operand sizes differ");
    }
    const Real gain = std::norm(inner(w.values(), s.values()));
    const Real power = inner(w.values(), (r.matrix * w.values()).eval()).real();
    if (!(power > Real(0))) throw NumericalError("rayleigh_quotient: covariance is not positive definite along w");
    return signal_power * gain / power;
}

template <typename Real>
Real to_db(Real linear) {
    return Real(10) * std::log10(linear);
}

template <typename Real>
Real from_db(Real db) {
    return std::pow(Real(10), db / Real(10));
}

}  // namespace lsmi
