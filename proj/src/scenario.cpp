#include "lsmi/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lsmi/errors.hpp"
#include "lsmi/filters.hpp"

namespace lsmi {

double ScenarioConfig::interference_power() const {
    double total = 0.0;
    for (const auto& c : components) total += c.power;
    return total;
}

void ScenarioConfig::validate() const {
    if (!(prf > 0.0)) throw ConfigError("scenario.prf must be positive");
    if (n < 2) throw ConfigError("scenario.n must be at least 2");
    if (!(noise_power > 0.0)) throw ConfigError("scenario.noise_power must be positive");
    if (!(signal_power >= 0.0)) throw ConfigError("scenario.signal_power must be non-negative");
    if (!std::isfinite(signal_doppler)) throw ConfigError("scenario.signal_doppler must be finite");
    if (training_signal_power && !(*training_signal_power >= 0.0)) {
        throw ConfigError("scenario.training_signal_power must be non-negative");
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        const std::string where = "scenario.components[" + std::to_string(i) + "]";
        if (!(c.doppler_spread >= 0.0)) throw ConfigError(where + ".doppler_spread must be non-negative");
        if (!(c.power >= 0.0)) throw ConfigError(where + ".power must be non-negative");
        if (!std::isfinite(c.center_doppler)) throw ConfigError(where + ".center_doppler must be finite");
    }
}

ScenarioConfig resolve_scenario(const ScenarioConfig& base, std::size_t n, double target_db,
                                SinrReference reference) {
    ScenarioConfig out = base;
    out.n = n;
    if (out.components.empty()) {
        out.validate();
        return out;
    }

    const double ratio = from_db(target_db);
    double total = out.signal_power / ratio;
    if (reference == SinrReference::InterferencePlusNoise) total -= out.noise_power;
    if (!(total >= 0.0) || !std::isfinite(total)) {
        throw ConfigError("input SINR " + std::to_string(target_db) +
                          " dB is unreachable with the configured signal and noise powers");
    }

    const double weight_sum = base.interference_power();
    for (auto& c : out.components) {
        const double share = weight_sum > 0.0 ? c.power / weight_sum : 1.0 / static_cast<double>(out.components.size());
        c.power = total * share;
    }
    out.validate();
    return out;
}

SteeringVector<double> steering_vector(double doppler, double prf, std::size_t n) {
    if (!(prf > 0.0)) throw ConfigError("steering_vector: prf must be positive");
    ComplexVector s(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        // Reduce the phase before exponentiating so large k*doppler stay unit modulus.
        const double cycles = std::fmod(doppler * static_cast<double>(k) / prf, 1.0);
        s(static_cast<Eigen::Index>(k)) = std::polar(1.0, 2.0 * std::numbers::pi * cycles);
    }
    return SteeringVector<double>(std::move(s));
}

CovarianceMatrix<double> true_covariance(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<Eigen::Index>(cfg.n);
    const double pi = std::numbers::pi;

    // Autocorrelation by lag; the matrix is Toeplitz.
    std::vector<std::complex<double>> lag(cfg.n);
    for (std::size_t l = 0; l < cfg.n; ++l) {
        const double tau = static_cast<double>(l) / cfg.prf;
        std::complex<double> acc = l == 0 ? cfg.noise_power : 0.0;
        for (const auto& c : cfg.components) {
            const double envelope = std::exp(-2.0 * pi * pi * c.doppler_spread * c.doppler_spread * tau * tau);
            const double cycles = std::fmod(c.center_doppler * tau, 1.0);
            acc += c.power * envelope * std::polar(1.0, 2.0 * pi * cycles);
        }
        lag[l] = acc;
    }

    ComplexMatrix r(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = 0; q < n; ++q) {
            r(p, q) = p >= q ? lag[static_cast<std::size_t>(p - q)] : std::conj(lag[static_cast<std::size_t>(q - p)]);
        }
    }
    return {std::move(r), CovarianceRole::TrueR, cfg.noise_power};
}

TrainingSample<double> draw_snapshots(const CovarianceMatrix<double>& r, std::size_t m, RngStream& rng) {
    const auto factor = hermitian_factor(r.matrix);
    const Eigen::Index n = r.dim();
    ComplexMatrix z(n, static_cast<Eigen::Index>(m));
    // Column-major fill: column i is drawn before column i+1.
    for (Eigen::Index i = 0; i < z.cols(); ++i) {
        for (Eigen::Index k = 0; k < n; ++k) z(k, i) = rng.complex_normal();
    }
    return {factor.lower().triangularView<Eigen::Lower>() * z, false};
}

TrainingSample<double> contaminate(const TrainingSample<double>& sample, const SteeringVector<double>& s,
                                   double training_power, RngStream& rng) {
    if (sample.n() != s.size()) throw DimensionMismatch("contaminate: steering length differs from snapshot length");
    if (!(training_power >= 0.0)) throw NumericalError("contaminate: training power must be non-negative");
    TrainingSample<double> out{sample.snapshots, true};
    for (Eigen::Index i = 0; i < out.m(); ++i) {
        // Rayleigh amplitude by inversion: a^2 is exponential with mean training_power.
        const double amplitude = std::sqrt(-training_power * std::log1p(-rng.uniform()));
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        out.snapshots.col(i) += std::polar(amplitude, phase) * s.values();
    }
    return out;
}

}  // namespace lsmi
