#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsmi {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    explicit NotHermitian(double asymmetry)
        : Error("matrix is not Hermitian (relative asymmetry " + std::to_string(asymmetry) + ")"),
          asymmetry_(asymmetry) {}

    double asymmetry() const noexcept { return asymmetry_; }

private:
    double asymmetry_;
};

class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(std::size_t pivot)
        : Error("matrix is not positive definite (non-positive pivot at index " +
                std::to_string(pivot) + ")"),
          pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class EmptySample : public Error {
public:
    EmptySample() : Error("training sample has no snapshots") {}
};

class ZeroWeights : public Error {
public:
    ZeroWeights() : Error("weight vector has zero norm") {}
};

/// A denominator of the loading-factor update vanished, or the update lost
/// realness. `iteration` is 1-based; 0 means the step was called directly.
class DegenerateGeometry : public Error {
public:
    explicit DegenerateGeometry(const std::string& what, std::size_t iteration = 0)
        : Error(iteration == 0 ? what : what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid or unreadable configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace lsmi
