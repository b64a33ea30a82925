#pragma once

// Synthetic slow-time radar world: Gaussian-spectrum interference, thermal
// noise, a Doppler-shifted target and optional target leakage into the
// training cells.

#include <cstddef>
#include <optional>
#include <vector>

#include "lsmi/numerics.hpp"
#include "lsmi/rng.hpp"
#include "lsmi/types.hpp"

namespace lsmi {

struct InterferenceComponent {
    double center_doppler = 0.0;  ///< Hz
    double doppler_spread = 0.0;  ///< Hz, standard deviation of the Gaussian spectrum
    double power = 0.0;           ///< linear
};

struct ScenarioConfig {
    double prf = 20000.0;  ///< Hz
    std::size_t n = 16;    ///< pulses per snapshot
    std::vector<InterferenceComponent> components;
    double noise_power = 1.0;
    double signal_doppler = 4000.0;  ///< Hz
    double signal_power = 10.0;
    bool contaminated = false;
    /// Average target power per training snapshot; signal_power when unset.
    std::optional<double> training_signal_power;

    double interference_power() const;
    double effective_training_signal_power() const { return training_signal_power.value_or(signal_power); }

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
};

/// How an "input SINR" target is turned into an interference level.
enum class SinrReference {
    Interference,           ///< signal / total interference power
    InterferencePlusNoise,  ///< signal / (total interference + noise power)
};

/// Copy of `base` with n set and the component powers rescaled, keeping their
/// proportions, so the input ratio hits `target_db`. Components whose powers
/// are all zero are split equally. Throws ConfigError for unreachable targets.
ScenarioConfig resolve_scenario(const ScenarioConfig& base, std::size_t n, double target_db,
                                SinrReference reference);

/// s_k = exp(j 2 pi doppler k / prf), k = 0..n-1.
SteeringVector<double> steering_vector(double doppler, double prf, std::size_t n);

/// Stationary (Toeplitz) interference-plus-noise covariance:
/// R[p,q] = sum_c P_c exp(-2 pi^2 sigma_c^2 tau^2) exp(j 2 pi f_c tau) + noise delta_pq,
/// tau = (p - q)/prf.
CovarianceMatrix<double> true_covariance(const ScenarioConfig& cfg);

/// m independent columns L z, with L the factor of R and z standard circular normal.
TrainingSample<double> draw_snapshots(const CovarianceMatrix<double>& r, std::size_t m, RngStream& rng);

/// Adds a_i exp(j phi_i) s to every column, with a_i Rayleigh (E[a^2] = training_power)
/// and phi_i uniform.
TrainingSample<double> contaminate(const TrainingSample<double>& sample, const SteeringVector<double>& s,
                                   double training_power, RngStream& rng);

}  // namespace lsmi
