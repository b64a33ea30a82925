#pragma once

// Monte-Carlo comparison of the optimum filter, fixed loading, the iterative
// adaptive loading and an omniscient grid search over the loading factor.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsmi/loading.hpp"
#include "lsmi/scenario.hpp"

namespace lsmi {

enum class Method { Optimal, Fixed, Adaptive, GridOracle };

inline constexpr std::array kAllMethods{Method::Optimal, Method::Fixed, Method::Adaptive, Method::GridOracle};

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Loading-factor grid for the oracle, in dB relative to the noise power.
struct GridSpec {
    double alpha_min_db = -20.0;
    double alpha_max_db = 40.0;
    std::size_t points = 61;

    /// Linear loading factors, ascending.
    std::vector<double> alphas(double noise_power) const;
};

struct ExperimentConfig {
    ScenarioConfig scenario;  ///< template; n and interference powers are set per cell
    std::vector<std::size_t> n_values;
    double m_ratio = 1.0;  ///< M = round(m_ratio * N)
    std::vector<double> input_sinr_db;
    std::size_t trials = 500;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::Optimal, Method::Fixed, Method::Adaptive};
    std::size_t adaptive_T = 3;
    GridSpec grid;
    SinrReference sinr_reference = SinrReference::Interference;
    NegativeAlphaPolicy adaptive_negative_alpha = NegativeAlphaPolicy::Reflect;
    /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 1;

    std::size_t training_size(std::size_t n) const;
    bool has(Method m) const;

    /// Throws ConfigError on the first violated invariant, including
    /// unreachable input-SINR targets.
    void validate() const;
};

/// Everything a trial needs that does not depend on the trial index.
struct CellContext {
    ScenarioConfig scenario;
    std::size_t n = 0;
    std::size_t m = 0;
    double input_sinr_db = 0.0;
    CovarianceMatrix<double> true_r;
    SteeringVector<double> steering;
    std::vector<Method> methods;
    std::size_t adaptive_T = 3;
    std::vector<double> grid;
    NegativeAlphaPolicy negative_alpha = NegativeAlphaPolicy::Reflect;
    std::uint64_t seed = 1;
};

CellContext prepare_cell(const ExperimentConfig& cfg, std::size_t n, double input_sinr_db);

struct MethodOutcome {
    bool present = false;
    double output_sinr = 0.0;  ///< linear
    double alpha = 0.0;        ///< loading factor used; NaN for the optimum filter
    bool adjusted = false;     ///< adaptive only: the alpha bounds fired
};

struct TrialOutcome {
    std::array<MethodOutcome, kAllMethods.size()> methods;

    const MethodOutcome& operator[](Method m) const { return methods[static_cast<std::size_t>(m)]; }
    MethodOutcome& operator[](Method m) { return methods[static_cast<std::size_t>(m)]; }
};

/// Streams for one trial, keyed by (seed, n, input SINR, trial, purpose).
RngStream trial_stream(const CellContext& cell, std::size_t trial, StreamPurpose purpose);

/// Draws the training sample for `trial` (contaminated if configured).
TrainingSample<double> draw_training(const CellContext& cell, std::size_t trial);

/// One Monte-Carlo trial. Every method is scored against the true covariance.
TrialOutcome run_trial(const CellContext& cell, std::size_t trial);

struct OracleResult {
    double alpha;
    double output_sinr;  ///< linear
};

/// Grid alpha maximizing the true-covariance output SINR of loaded_weights;
/// ties go to the smaller alpha.
OracleResult grid_oracle(const CovarianceMatrix<double>& sample_r, const SteeringVector<double>& s,
                         const CovarianceMatrix<double>& true_r, double signal_power, std::vector<double> grid);

struct ResultRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double input_sinr_db = 0.0;
    Method method = Method::Optimal;
    double mean_output_sinr_db = 0.0;
    double std_output_sinr_db = 0.0;
    double mean_output_sinr_linear = 0.0;
    double mean_alpha = 0.0;
    double clamp_rate = 0.0;
    std::size_t trials = 0;
    bool failed = false;
    std::vector<double> trial_output_sinr_db;  ///< per trial, in trial order
};

struct CellFailure {
    std::size_t n;
    double input_sinr_db;
    std::size_t trial;
    std::string message;
};

struct ExperimentResult {
    std::uint64_t seed = 0;
    std::vector<ResultRow> rows;  ///< sorted by (n, input_sinr_db, method name)
    std::vector<CellFailure> failures;

    bool ok() const { return failures.empty(); }
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace lsmi
