// SPDX-License-Identifier: Apache-2.0
#include "irs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "irs/errors.hpp"

namespace irs {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "Hermitian matrix must be square, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(os.str());
  }
  if (!m.allFinite()) {
    throw NonHermitianInput("matrix has non-finite entries");
  }
  const double scale = m.norm();
  const double skew = (m - m.adjoint()).norm() * 0.5;
  if (skew > 1e-9 * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: ||M - M^H||/2 = " << skew << ", ||M||_F = " << scale;
    throw NonHermitianInput(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return from_trusted(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return from_trusted(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::outer(const ComplexVector& v) {
  ComplexMatrix m = v * v.adjoint();
  m.diagonal() = m.diagonal().real().cast<Complex>();
  return from_trusted(std::move(m));
}

HermitianMatrix HermitianMatrix::from_trusted(ComplexMatrix m) {
  HermitianMatrix h;
  h.m_ = std::move(m);
  return h;
}

double HermitianMatrix::inner(const HermitianMatrix& other) const {
  // tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (m_.array() * other.m_.array().conjugate()).sum().real();
}

double HermitianMatrix::quadratic_form(const ComplexVector& v) const {
  if (v.size() != dim()) {
    throw DimensionMismatch("quadratic form: vector length does not match matrix");
  }
  return v.dot(m_ * v).real();
}

EigenDecomposition hermitian_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  // Eigen returns ascending order.
  const Eigen::Index n = h.dim();
  EigenDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

namespace detail {

ComplexMatrix psd_project_raw(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const RealVector& lambda = solver.eigenvalues();
  const ComplexMatrix& u = solver.eigenvectors();
  Eigen::Index first_positive = 0;
  while (first_positive < lambda.size() && lambda(first_positive) <= 0.0) {
    ++first_positive;
  }
  const Eigen::Index keep = lambda.size() - first_positive;
  if (keep == 0) {
    return ComplexMatrix::Zero(h.rows(), h.cols());
  }
  const auto cols = u.rightCols(keep);
  const RealVector roots = lambda.tail(keep).cwiseSqrt();
  const ComplexMatrix scaled = cols * roots.asDiagonal();
  return scaled * scaled.adjoint();
}

}  // namespace detail

HermitianMatrix psd_project(const HermitianMatrix& h) {
  ComplexMatrix p = detail::psd_project_raw(h.matrix());
  p = 0.5 * (p + p.adjoint());
  return HermitianMatrix::from_trusted(std::move(p));
}

ComplexMatrix sqrt_factor(const HermitianMatrix& v) {
  const EigenDecomposition eig = hermitian_eig(v);
  const double scale = v.frobenius_norm();
  const Eigen::Index n = v.dim();
  if (n > 0 && eig.values(n - 1) < -1e-6 * scale) {
    std::ostringstream os;
    os << "matrix is not PSD: min eigenvalue " << eig.values(n - 1) << ", ||V||_F = " << scale;
    throw NotPsd(os.str());
  }
  RealVector roots(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    roots(k) = std::sqrt(std::max(eig.values(k), 0.0));
  }
  return eig.vectors * roots.asDiagonal();
}

Complex standard_cn(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

ComplexVector sample_cn(const ComplexMatrix& f, Rng& rng) {
  ComplexVector z(f.cols());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    z(k) = standard_cn(rng);
  }
  return f * z;
}

}  // namespace irs
