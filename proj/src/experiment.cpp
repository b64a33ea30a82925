#include "lsmi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "lsmi/errors.hpp"
#include "lsmi/filters.hpp"

namespace lsmi {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Optimal: return "optimal";
        case Method::Fixed: return "fixed";
        case Method::Adaptive: return "adaptive";
        case Method::GridOracle: return "grid_oracle";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

std::vector<double> GridSpec::alphas(double noise_power) const {
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(noise_power * from_db(alpha_min_db));
        return out;
    }
    const double step = (alpha_max_db - alpha_min_db) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        out.push_back(noise_power * from_db(alpha_min_db + step * static_cast<double>(i)));
    }
    return out;
}

std::size_t ExperimentConfig::training_size(std::size_t n) const {
    return static_cast<std::size_t>(std::llround(m_ratio * static_cast<double>(n)));
}

bool ExperimentConfig::has(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

void ExperimentConfig::validate() const {
    scenario.validate();
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (n_values.empty()) throw ConfigError("n_values must not be empty");
    if (input_sinr_db.empty()) throw ConfigError("input_sinr_db must not be empty");
    if (methods.empty()) throw ConfigError("methods must not be empty");
    if (adaptive_T < 1) throw ConfigError("adaptive_T must be at least 1");
    if (!(m_ratio > 0.0) || !std::isfinite(m_ratio)) throw ConfigError("m_ratio must be positive");
    if (grid.points < 1) throw ConfigError("grid.points must be at least 1");
    if (!(grid.alpha_max_db >= grid.alpha_min_db)) throw ConfigError("grid.alpha_max_db must be >= grid.alpha_min_db");

    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            if (methods[i] == methods[j]) {
                throw ConfigError("method '" + std::string(method_name(methods[i])) + "' listed twice");
            }
        }
    }
    for (std::size_t i = 0; i < input_sinr_db.size(); ++i) {
        if (!std::isfinite(input_sinr_db[i])) throw ConfigError("input_sinr_db values must be finite");
        for (std::size_t j = i + 1; j < input_sinr_db.size(); ++j) {
            if (input_sinr_db[i] == input_sinr_db[j]) throw ConfigError("input_sinr_db has duplicate values");
        }
    }
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 2) throw ConfigError("n_values entries must be at least 2");
        if (training_size(n_values[i]) < 1) {
            throw ConfigError("m_ratio gives no training snapshots for n = " + std::to_string(n_values[i]));
        }
        for (std::size_t j = i + 1; j < n_values.size(); ++j) {
            if (n_values[i] == n_values[j]) throw ConfigError("n_values has duplicate values");
        }
    }
    for (double db : input_sinr_db) (void)resolve_scenario(scenario, n_values.front(), db, sinr_reference);
}

CellContext prepare_cell(const ExperimentConfig& cfg, std::size_t n, double input_sinr_db) {
    ScenarioConfig scenario = resolve_scenario(cfg.scenario, n, input_sinr_db, cfg.sinr_reference);
    auto true_r = true_covariance(scenario);
    auto steering = steering_vector(scenario.signal_doppler, scenario.prf, n);
    return CellContext{
        .scenario = std::move(scenario),
        .n = n,
        .m = cfg.training_size(n),
        .input_sinr_db = input_sinr_db,
        .true_r = std::move(true_r),
        .steering = std::move(steering),
        .methods = cfg.methods,
        .adaptive_T = cfg.adaptive_T,
        .grid = cfg.grid.alphas(cfg.scenario.noise_power),
        .negative_alpha = cfg.adaptive_negative_alpha,
        .seed = cfg.seed,
    };
}

RngStream trial_stream(const CellContext& cell, std::size_t trial, StreamPurpose purpose) {
    return RngStream(cell.seed, {static_cast<std::uint64_t>(cell.n), std::bit_cast<std::uint64_t>(cell.input_sinr_db),
                                 static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(purpose)});
}

TrainingSample<double> draw_training(const CellContext& cell, std::size_t trial) {
    auto snapshot_rng = trial_stream(cell, trial, StreamPurpose::Snapshots);
    auto sample = draw_snapshots(cell.true_r, cell.m, snapshot_rng);
    if (cell.scenario.contaminated) {
        auto leak_rng = trial_stream(cell, trial, StreamPurpose::Contamination);
        sample = contaminate(sample, cell.steering, cell.scenario.effective_training_signal_power(), leak_rng);
    }
    return sample;
}

OracleResult grid_oracle(const CovarianceMatrix<double>& sample_r, const SteeringVector<double>& s,
                         const CovarianceMatrix<double>& true_r, double signal_power, std::vector<double> grid) {
    if (grid.empty()) throw NumericalError("grid_oracle: empty grid");
    std::sort(grid.begin(), grid.end());
    OracleResult best{grid.front(), -std::numeric_limits<double>::infinity()};
    for (double alpha : grid) {
        const double sinr = rayleigh_quotient(loaded_weights(sample_r, alpha, s), s, true_r, signal_power);
        if (sinr > best.output_sinr) best = {alpha, sinr};
    }
    return best;
}

TrialOutcome run_trial(const CellContext& cell, std::size_t trial) {
    const auto& s = cell.steering;
    const double noise = cell.scenario.noise_power;
    const double signal = cell.scenario.signal_power;
    auto has = [&](Method m) { return std::find(cell.methods.begin(), cell.methods.end(), m) != cell.methods.end(); };

    TrialOutcome out;
    if (has(Method::Optimal)) {
        out[Method::Optimal] = {true, rayleigh_quotient(optimal_weights(cell.true_r, s), s, cell.true_r, signal),
                                std::numeric_limits<double>::quiet_NaN(), false};
    }

    const bool need_sample = has(Method::Fixed) || has(Method::Adaptive) || has(Method::GridOracle);
    if (!need_sample) return out;

    const auto sample_r = sample_covariance(draw_training(cell, trial), noise);
    const double fixed_alpha = kFixedLoadingRatio * noise;

    if (has(Method::Fixed)) {
        out[Method::Fixed] = {true, rayleigh_quotient(fixed_loading_weights(sample_r, s, noise), s, cell.true_r, signal),
                              fixed_alpha, false};
    }

    // The oracle grid is augmented with the adaptive alpha, so compute it
    // whenever either method is requested.
    if (has(Method::Adaptive) || has(Method::GridOracle)) {
        const auto trace = iterative_loading(sample_r, s, noise, cell.adaptive_T, LoadingOptions{cell.negative_alpha, {}});
        const double adaptive_alpha = trace.final_alpha();
        if (has(Method::Adaptive)) {
            out[Method::Adaptive] = {true, rayleigh_quotient(trace.final_weights, s, cell.true_r, signal),
                                     adaptive_alpha, trace.any_adjusted()};
        }
        if (has(Method::GridOracle)) {
            std::vector<double> grid = cell.grid;
            grid.push_back(fixed_alpha);
            grid.push_back(adaptive_alpha);
            const auto best = grid_oracle(sample_r, s, cell.true_r, signal, std::move(grid));
            out[Method::GridOracle] = {true, best.output_sinr, best.alpha, false};
        }
    }
    return out;
}

namespace {

struct WorkItem {
    std::size_t cell;
    std::size_t trial;
};

struct TrialSlot {
    std::optional<TrialOutcome> outcome;
    std::string error;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

struct Moments {
    double mean;
    double std;
};

// Shifted by the first sample so identical inputs give exactly that value
// and a standard deviation of exactly zero.
Moments shifted_moments(const std::vector<double>& v) {
    const double shift = v.front();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double x : v) {
        sum += x - shift;
        sum_sq += (x - shift) * (x - shift);
    }
    const auto count = static_cast<double>(v.size());
    const double mean = shift + sum / count;
    if (v.size() < 2) return {mean, 0.0};
    const double var = std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
    return {mean, std::sqrt(var)};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    std::vector<std::size_t> ns = cfg.n_values;
    std::vector<double> sinrs = cfg.input_sinr_db;
    std::sort(ns.begin(), ns.end());
    std::sort(sinrs.begin(), sinrs.end());

    std::vector<CellContext> cells;
    for (std::size_t n : ns) {
        for (double db : sinrs) cells.push_back(prepare_cell(cfg, n, db));
    }

    std::vector<WorkItem> items;
    items.reserve(cells.size() * cfg.trials);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (std::size_t t = 0; t < cfg.trials; ++t) items.push_back({c, t});
    }

    std::vector<TrialSlot> slots(items.size());
    parallel_for(items.size(), cfg.threads, [&](std::size_t i) {
        try {
            slots[i].outcome = run_trial(cells[items[i].cell], items[i].trial);
        } catch (const std::exception& e) {
            slots[i].error = e.what();
        }
    });

    std::vector<Method> methods = cfg.methods;
    std::sort(methods.begin(), methods.end(),
              [](Method a, Method b) { return method_name(a) < method_name(b); });

    ExperimentResult result;
    result.seed = cfg.seed;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const TrialSlot* first = &slots[c * cfg.trials];

        std::optional<std::size_t> failed_trial;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            if (!first[t].outcome) {
                failed_trial = t;
                break;
            }
        }
        if (failed_trial) {
            result.failures.push_back({cell.n, cell.input_sinr_db, *failed_trial, first[*failed_trial].error});
        }

        for (Method m : methods) {
            ResultRow row;
            row.n = cell.n;
            row.m = cell.m;
            row.input_sinr_db = cell.input_sinr_db;
            row.method = m;
            if (failed_trial) {
                row.failed = true;
                row.trials = *failed_trial;
                row.mean_output_sinr_db = row.std_output_sinr_db = row.mean_output_sinr_linear = nan;
                row.mean_alpha = row.clamp_rate = nan;
                result.rows.push_back(std::move(row));
                continue;
            }

            std::vector<double> linear;
            std::vector<double> alphas;
            std::size_t adjusted = 0;
            linear.reserve(cfg.trials);
            row.trial_output_sinr_db.reserve(cfg.trials);
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const auto& o = (*first[t].outcome)[m];
                linear.push_back(o.output_sinr);
                row.trial_output_sinr_db.push_back(to_db(o.output_sinr));
                alphas.push_back(o.alpha);
                if (o.adjusted) ++adjusted;
            }
            row.trials = cfg.trials;
            const auto moments = shifted_moments(row.trial_output_sinr_db);
            row.mean_output_sinr_db = moments.mean;
            row.std_output_sinr_db = moments.std;
            row.mean_output_sinr_linear = mean_of(linear);
            row.mean_alpha = m == Method::Optimal ? nan : mean_of(alphas);
            row.clamp_rate = static_cast<double>(adjusted) / static_cast<double>(cfg.trials);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

}  // namespace lsmi
