// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irs/errors.hpp"
#include "irs/linalg.hpp"
#include "oracles.hpp"

using namespace irs;

TEST_CASE("hermitian matrix rejects skew input and symmetrizes") {
  ComplexMatrix m(2, 2);
  m << Complex{1, 0}, Complex{0, 1}, Complex{0, 1}, Complex{2, 0};
  CHECK_THROWS_AS(HermitianMatrix{m}, NonHermitianInput);
  CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix::Zero(2, 3)}, DimensionMismatch);

  m(1, 0) = Complex{0, -1} + Complex{1e-12, 0};
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h(1, 1).imag() == 0.0);
}

TEST_CASE("eigendecomposition of trivial matrices") {
  const auto id = hermitian_eig(HermitianMatrix::identity(3));
  for (int i = 0; i < 3; ++i) CHECK(id.values(i) == doctest::Approx(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto e = hermitian_eig(HermitianMatrix(d));
  CHECK(e.values(0) == doctest::Approx(3.0));
  CHECK(e.values(1) == doctest::Approx(2.0));
  CHECK(e.values(2) == doctest::Approx(1.0));
  // the eigenvector of 2 is the third basis vector
  CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues agree with an independent Jacobi solver") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix m = oracle::random_hermitian(8, rng);
    const HermitianMatrix h(m);
    const auto e = hermitian_eig(h);
    const auto ref = oracle::jacobi_eigenvalues(m);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(e.values(i) - ref[i]) < 1e-8);

    const ComplexMatrix recon = e.vectors * e.values.cast<Complex>().asDiagonal() *
                                e.vectors.adjoint();
    CHECK((recon - m).norm() <= 1e-8 * m.norm());
    CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(8, 8)).norm() < 1e-8);
  }
}

TEST_CASE("psd projection") {
  std::mt19937_64 rng(12);
  const ComplexMatrix p = oracle::random_psd(5, 3, rng);
  CHECK((psd_project(HermitianMatrix(p)).matrix() - p).norm() < 1e-10 * std::max(1.0, p.norm()));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -2;
  const auto pd = psd_project(HermitianMatrix(d)).matrix();
  CHECK(std::abs(pd(0, 0) - Complex{1, 0}) < 1e-12);
  CHECK(std::abs(pd(1, 1)) < 1e-12);
  CHECK(std::abs(pd(0, 1)) < 1e-12);

  // nearest point on the cone: no sampled PSD matrix is closer
  const ComplexMatrix h = oracle::random_hermitian(6, rng);
  const ComplexMatrix proj = psd_project(HermitianMatrix(h)).matrix();
  const double dist = (proj - h).norm();
  CHECK(oracle::jacobi_eigenvalues(proj).back() >= -1e-10);
  for (int k = 0; k < 1000; ++k) {
    const ComplexMatrix q = oracle::random_psd(6, 1 + k % 6, rng) * (0.2 * (1 + k % 7));
    CHECK((q - h).norm() >= dist);
  }
  CHECK((psd_project(HermitianMatrix(proj)).matrix() - proj).norm() < 1e-10 * proj.norm());
}

TEST_CASE("square-root factor reconstructs the matrix") {
  const ComplexMatrix f_id = sqrt_factor(HermitianMatrix::identity(4));
  CHECK((f_id * f_id.adjoint() - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);

  std::mt19937_64 rng(13);
  const ComplexVector v = oracle::random_matrix(6, 1, rng);
  const auto vv = HermitianMatrix::outer(v);
  const ComplexMatrix f1 = sqrt_factor(vv);
  CHECK((f1 * f1.adjoint() - vv.matrix()).norm() <= 1e-8 * vv.frobenius_norm());

  const ComplexMatrix p = oracle::random_psd(10, 10, rng);
  const ComplexMatrix f = sqrt_factor(HermitianMatrix(p));
  CHECK((f * f.adjoint() - p).norm() <= 1e-8 * p.norm());

  ComplexMatrix neg = ComplexMatrix::Identity(3, 3);
  neg(2, 2) = -1;
  CHECK_THROWS_AS(sqrt_factor(HermitianMatrix(neg)), NotPsd);
}

TEST_CASE("circular gaussian sampling") {
  Rng rng(14);
  CHECK(sample_cn(ComplexMatrix::Zero(3, 3), rng).norm() == 0.0);

  constexpr int kSamples = 100000;
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  double mag = 0.0;
  for (int s = 0; s < kSamples; ++s) mag += sample_cn(id, rng).cwiseAbs().sum();
  mag /= 3.0 * kSamples;
  const double expected = std::sqrt(std::numbers::pi) / 2.0;
  CHECK(std::abs(mag - expected) < 0.01 * expected);

  std::mt19937_64 gen(15);
  const ComplexMatrix v = oracle::random_psd(4, 4, gen);
  const ComplexMatrix f = sqrt_factor(HermitianMatrix(v));
  ComplexMatrix cov = ComplexMatrix::Zero(4, 4);
  for (int s = 0; s < kSamples; ++s) {
    const ComplexVector r = sample_cn(f, rng);
    cov += r * r.adjoint();
  }
  cov /= kSamples;
  CHECK((cov - v).norm() < 0.02 * v.norm());
}
