#pragma once

// YAML experiment configuration. Keys mirror ExperimentConfig field names;
// unknown keys are rejected.
//
//   scenario:
//     prf: 20000
//     noise_power: 1.0
//     signal_power: 10.0
//     signal_doppler: 4000
//     contaminated: false
//     training_signal_power: 10.0      # optional, defaults to signal_power
//     components:
//       - {center_doppler: 0,    doppler_spread: 500, power: 1}
//       - {center_doppler: 1000, doppler_spread: 500, power: 1}
//   n_values: [8, 16, 32]
//   m_ratio: 1                         # number or "p/q"
//   input_sinr_db: [20, 0, -20]
//   trials: 500
//   seed: 1
//   methods: [optimal, fixed, adaptive, grid_oracle]
//   adaptive_T: 3
//   grid: {alpha_min_db: -20, alpha_max_db: 40, points: 61}
//   sinr_reference: interference       # or interference_plus_noise
//   adaptive_negative_alpha: reflect   # or clamp
//   threads: 1

#include <filesystem>
#include <string>
#include <string_view>

#include "lsmi/experiment.hpp"

namespace lsmi {

/// Parses and validates. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view yaml_text);

/// Reads, parses and validates. Throws ConfigError, including for unreadable files.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

std::string_view sinr_reference_name(SinrReference r);
std::string_view negative_alpha_name(NegativeAlphaPolicy p);

}  // namespace lsmi
