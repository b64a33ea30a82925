#pragma once

// Dense complex Hermitian kernel: factorization, solves and inner products.
// Everything is templated on the real scalar; the library instantiates double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "lsmi/errors.hpp"

namespace lsmi {

template <typename Real>
using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Vector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<double>;
using ComplexVector = Vector<double>;

/// Maximum tolerated asymmetry |A - A^H|, relative to max(1, max|A_ij|).
inline constexpr double kHermitianTolerance = 1e-10;

/// Largest entry magnitude of |A - A^H| scaled by max(1, max|A_ij|).
template <typename Derived>
typename Derived::RealScalar hermitian_asymmetry(const Eigen::MatrixBase<Derived>& a) {
    using Real = typename Derived::RealScalar;
    if (a.size() == 0) return Real(0);
    const Real scale = std::max(Real(1), a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

/// Lower-triangular L with A = L L^H.
template <typename Real>
class HermitianFactor {
public:
    HermitianFactor() = default;

    Eigen::Index dim() const noexcept { return lower_.rows(); }
    const Matrix<Real>& lower() const noexcept { return lower_; }

    /// L L^H.
    Matrix<Real> reconstruct() const { return lower_ * lower_.adjoint(); }

private:
    explicit HermitianFactor(Matrix<Real> lower) : lower_(std::move(lower)) {}

    template <typename Derived>
    friend HermitianFactor<typename Derived::RealScalar> hermitian_factor(
        const Eigen::MatrixBase<Derived>& a);

    Matrix<Real> lower_;
};

/// Cholesky factorization of a Hermitian positive definite matrix. The input
/// is symmetrized as (A + A^H)/2 before factoring.
template <typename Derived>
HermitianFactor<typename Derived::RealScalar> hermitian_factor(const Eigen::MatrixBase<Derived>& a) {
    using Real = typename Derived::RealScalar;
    using Complex = std::complex<Real>;

    if (a.rows() != a.cols()) throw NotSquare("hermitian_factor: matrix is not square");
    const Real asymmetry = hermitian_asymmetry(a);
    if (!(asymmetry <= Real(kHermitianTolerance))) throw NotHermitian(static_cast<double>(asymmetry));

    const Eigen::Index n = a.rows();
    const Matrix<Real> sym = (a + a.adjoint()) / Real(2);
    Matrix<Real> lower = Matrix<Real>::Zero(n, n);

    for (Eigen::Index j = 0; j < n; ++j) {
        Real pivot = sym(j, j).real();
        for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(lower(j, k));
        if (!(pivot > Real(0)) || !std::isfinite(pivot)) {
            throw NotPositiveDefinite(static_cast<std::size_t>(j));
        }
        const Real diag = std::sqrt(pivot);
        lower(j, j) = Complex(diag, Real(0));
        for (Eigen::Index i = j + 1; i < n; ++i) {
            Complex acc = sym(i, j);
            for (Eigen::Index k = 0; k < j; ++k) acc -= lower(i, k) * std::conj(lower(j, k));
            lower(i, j) = acc / diag;
        }
    }
    return HermitianFactor<Real>(std::move(lower));
}

/// Solves A x = b given the factor of A.
template <typename Real, typename Derived>
Vector<Real> solve(const HermitianFactor<Real>& factor, const Eigen::MatrixBase<Derived>& b) {
    if (b.cols() != 1 || b.rows() != factor.dim()) {
        throw DimensionMismatch("solve: right-hand side length does not match factor dimension");
    }
    Vector<Real> x = factor.lower().template triangularView<Eigen::Lower>().solve(b);
    factor.lower().adjoint().template triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
}

/// a^H b, conjugating the first argument.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("inner: vector lengths differ");
    return a.derived().dot(b.derived());
}

/// A + alpha I. The input is left untouched.
template <typename Derived>
Matrix<typename Derived::RealScalar> add_scaled_identity(const Eigen::MatrixBase<Derived>& a,
                                                         typename Derived::RealScalar alpha) {
    if (a.rows() != a.cols()) throw NotSquare("add_scaled_identity: matrix is not square");
    if (!std::isfinite(alpha)) throw NumericalError("add_scaled_identity: loading factor is not finite");
    Matrix<typename Derived::RealScalar> out = a;
    out.diagonal().array() += alpha;
    return out;
}

}  // namespace lsmi
