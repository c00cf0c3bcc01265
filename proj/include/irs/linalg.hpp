// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra used throughout the simulator: Hermitian
// eigendecomposition, projection onto the PSD cone, square-root factors and
// correlated circular complex Gaussian sampling.
#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace irs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Random engine used for every stochastic draw in the library.
using Rng = std::mt19937_64;

/// Square complex matrix that is Hermitian by construction.
///
/// The constructor rejects inputs whose anti-Hermitian part exceeds
/// 1e-9 * ||M||_F and then symmetrizes, so the stored entries satisfy
/// H(i,j) == conj(H(j,i)) exactly and the diagonal is real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix zero(Eigen::Index dim);
  /// v v^H
  static HermitianMatrix outer(const ComplexVector& v);
  /// Wraps a matrix the caller already knows to be exactly Hermitian.
  static HermitianMatrix from_trusted(ComplexMatrix m);

  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
  [[nodiscard]] double trace() const { return m_.trace().real(); }
  [[nodiscard]] double frobenius_norm() const { return m_.norm(); }
  /// Re tr(this * other); exact for Hermitian pairs.
  [[nodiscard]] double inner(const HermitianMatrix& other) const;
  /// v^H H v
  [[nodiscard]] double quadratic_form(const ComplexVector& v) const;

  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns are eigenvectors, unitary
};

EigenDecomposition hermitian_eig(const HermitianMatrix& h);

/// Nearest PSD matrix in Frobenius norm: U diag(max(lambda, 0)) U^H.
HermitianMatrix psd_project(const HermitianMatrix& h);

/// F with F F^H = V, computed as U diag(sqrt(lambda)).
///
/// Eigenvalues down to -1e-6 * ||V||_F are treated as rounding noise and
/// clipped to zero; anything more negative throws NotPsd.
ComplexMatrix sqrt_factor(const HermitianMatrix& v);

/// One standard circular complex Gaussian draw (real and imaginary parts
/// independent, each with variance 1/2).
Complex standard_cn(Rng& rng);

/// F z with z ~ CN(0, I); distributed as CN(0, F F^H).
ComplexVector sample_cn(const ComplexMatrix& f, Rng& rng);

namespace detail {

/// Eigen-based projection of an (assumed exactly Hermitian) matrix; used by
/// the hot ADMM loop where revalidating every iterate would be wasteful.
ComplexMatrix psd_project_raw(const ComplexMatrix& h);

}  // namespace detail

}  // namespace irs
