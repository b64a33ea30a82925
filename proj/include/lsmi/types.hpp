#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lsmi/numerics.hpp"

namespace lsmi {

/// Known signal replica: every entry has unit modulus, so ||s||^2 = N.
template <typename Real>
class SteeringVector {
public:
    static constexpr double kModulusTolerance = 1e-12;

    explicit SteeringVector(Vector<Real> values) : values_(std::move(values)) {
        if (values_.size() == 0) throw DimensionMismatch("steering vector is empty");
        for (Eigen::Index k = 0; k < values_.size(); ++k) {
            if (!(std::abs(std::abs(values_(k)) - Real(1)) <= Real(kModulusTolerance))) {
                throw NumericalError("steering vector entry " + std::to_string(k) +
                                     " does not have unit modulus");
            }
        }
    }

    Eigen::Index size() const noexcept { return values_.size(); }
    const Vector<Real>& values() const noexcept { return values_; }

private:
    Vector<Real> values_;
};

enum class CovarianceRole { TrueR, SampleR, LoadedR };

/// Hermitian PSD matrix tagged with its role and the white-noise power it
/// was built against (linear power units).
template <typename Real>
struct CovarianceMatrix {
    Matrix<Real> matrix;
    CovarianceRole role = CovarianceRole::SampleR;
    Real noise_power = Real(1);

    Eigen::Index dim() const noexcept { return matrix.rows(); }
};

/// Filter weights. Always finite with nonzero norm.
template <typename Real>
class WeightVector {
public:
    explicit WeightVector(Vector<Real> values) : values_(std::move(values)) {
        if (!values_.allFinite()) throw NumericalError("weight vector has non-finite entries");
        if (!(values_.norm() > Real(0))) throw ZeroWeights();
    }

    Eigen::Index size() const noexcept { return values_.size(); }
    const Vector<Real>& values() const noexcept { return values_; }

private:
    Vector<Real> values_;
};

/// N x M snapshot matrix; column i is the i-th training vector.
template <typename Real>
struct TrainingSample {
    Matrix<Real> snapshots;
    bool contaminated = false;

    Eigen::Index n() const noexcept { return snapshots.rows(); }
    Eigen::Index m() const noexcept { return snapshots.cols(); }
};

/// Record of the iterative loading-factor search.
///
/// `alphas` holds alpha_1 ... alpha_{T+1} and `lambdas` holds
/// lambda_1 ... lambda_T. The final weights are formed with alpha_T; alpha_{T+1}
/// is kept so the two can be compared. `adjusted[i]` is set when the raw update
/// producing alphas[i+1] was reflected or clamped.
template <typename Real>
struct LoadingTrace {
    std::vector<Real> alphas;
    std::vector<Real> lambdas;
    std::vector<bool> adjusted;
    WeightVector<Real> final_weights;
    std::size_t iterations = 0;

    Real final_alpha() const { return alphas.at(iterations - 1); }
    Real next_alpha() const { return alphas.at(iterations); }

    bool any_adjusted() const {
        for (bool a : adjusted) {
            if (a) return true;
        }
        return false;
    }
};

}  // namespace lsmi
