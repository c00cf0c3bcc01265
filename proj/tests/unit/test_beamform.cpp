// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irs/beamform.hpp"
#include "oracles.hpp"

using namespace irs;

namespace {

ChannelSet random_instance(int n, int m_t, int m_r, std::mt19937_64& rng) {
  ChannelSet ch;
  ch.bs_to_irs = oracle::random_matrix(n, m_t, rng);
  ch.irs_to_bs = oracle::random_matrix(m_r, n, rng);
  ch.target_steering = oracle::random_unit_modulus(n, rng);
  ch.sensor_steering = oracle::random_unit_modulus(m_r, rng);
  ch.alpha = 1.0;
  return ch;
}

// ||Gt^T diag(v) a||^2 and ||Gr diag(v) a||^2 computed from the channels.
double tx_gain(const ChannelSet& ch, const ComplexVector& v) {
  return (ch.bs_to_irs.transpose() * v.cwiseProduct(ch.target_steering)).squaredNorm();
}
double rx_gain(const ChannelSet& ch, const ComplexVector& v) {
  return (ch.irs_to_bs * v.cwiseProduct(ch.target_steering)).squaredNorm();
}

}  // namespace

TEST_CASE("line-of-sight alignment") {
  const auto ones = ComplexVector::Ones(6);
  const auto p = los_optimal_phases(ones, ones);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(p.coefficients()(i) - Complex{1, 0}) < 1e-12);

  std::mt19937_64 rng(51);
  const ComplexVector h = oracle::random_unit_modulus(8, rng);
  const ComplexVector a = oracle::random_unit_modulus(8, rng);
  const auto phi = los_optimal_phases(h, a);
  const auto sum = [&](const ComplexVector& c) {
    return std::norm((h.array() * c.array() * a.array()).sum());
  };
  const double best = sum(phi.coefficients());
  CHECK(best == doctest::Approx(64.0).epsilon(1e-9));
  for (int i = 0; i < 8; ++i) {
    for (double d : {-0.1, 0.1, 1e-3}) {
      ComplexVector c = phi.coefficients();
      c(i) *= std::polar(1.0, d);
      CHECK(sum(c) < best);
    }
  }
}

TEST_CASE("quadratic forms") {
  std::mt19937_64 rng(52);
  auto ch = random_instance(7, 3, 4, rng);
  ch.bs_to_irs *= 0.1;
  ch.irs_to_bs *= 0.1;
  ch.bs_irs_path_loss = 0.01;
  const auto f = build_r1_r2(ch);
  CHECK(f.r1.trace() == doctest::Approx(ch.irs_to_bs.squaredNorm() / 0.01).epsilon(1e-12));
  CHECK(f.r2.trace() == doctest::Approx(ch.bs_to_irs.squaredNorm() / 0.01).epsilon(1e-12));
  CHECK(oracle::jacobi_eigenvalues(f.r1.matrix()).back() >= -1e-10);
  CHECK(oracle::jacobi_eigenvalues(f.r2.matrix()).back() >= -1e-10);
  for (int k = 0; k < 100; ++k) {
    const ComplexVector v = oracle::random_matrix(7, 1, rng);
    CHECK(f.r1.quadratic_form(v) == doctest::Approx(rx_gain(ch, v) / 0.01).epsilon(1e-10));
    CHECK(f.r2.quadratic_form(v) == doctest::Approx(tx_gain(ch, v) / 0.01).epsilon(1e-10));
  }

  ChannelSet id;
  id.irs_to_bs = ComplexMatrix::Identity(4, 4);
  id.bs_to_irs = ComplexMatrix::Identity(4, 4);
  id.target_steering = oracle::random_unit_modulus(4, rng);
  id.sensor_steering = ComplexVector::Ones(4);
  CHECK((build_r1_r2(id).r1.matrix() - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("taylor expansion") {
  std::mt19937_64 rng(53);
  const int n = 5;
  const HermitianMatrix r1(oracle::random_psd(n, 2, rng));
  const HermitianMatrix r2(oracle::random_psd(n, 3, rng));
  const auto feasible = [&] {
    ComplexMatrix p = oracle::random_psd(n, 1 + rng() % n, rng);
    const Eigen::VectorXd d = p.diagonal().real().cwiseSqrt().cwiseInverse();
    p = d.asDiagonal() * p * d.asDiagonal();
    return HermitianMatrix(p);
  };
  const HermitianMatrix vr = feasible();
  const double x0 = r1.inner(vr);
  const double y0 = r2.inner(vr);
  CHECK(sca_taylor_bound(vr, vr, r1, r2) == doctest::Approx(x0 * y0).epsilon(1e-12));

  int same_sign = 0;
  for (int k = 0; k < 1000; ++k) {
    const HermitianMatrix v = feasible();
    const double x = r1.inner(v);
    const double y = r2.inner(v);
    const double f = sca_taylor_bound(v, vr, r1, r2);
    // the gap to the product is exactly the cross term of the two traces
    CHECK(x * y - f == doctest::Approx((x - x0) * (y - y0)).epsilon(1e-9).scale(x * y));
    if ((x - x0) * (y - y0) >= 0.0) {
      ++same_sign;
      CHECK(f <= x * y * (1 + 1e-12));
    }
  }
  CHECK(same_sign > 0);

  const HermitianMatrix dir(oracle::random_hermitian(n, rng));
  const double d1 = r1.inner(dir);
  const double d2 = r2.inner(dir);
  for (double eps : {1e-3, 1e-5}) {
    const HermitianMatrix moved = HermitianMatrix::from_trusted(vr.matrix() + eps * dir.matrix());
    const double fd = (sca_taylor_bound(moved, vr, r1, r2) - x0 * y0) / eps;
    const double prod_fd = (r1.inner(moved) * r2.inner(moved) - x0 * y0) / eps;
    CHECK(fd == doctest::Approx(x0 * d2 + y0 * d1).epsilon(1e-8));
    CHECK(std::abs(prod_fd - fd) <= 2.0 * eps * std::abs(d1 * d2) + 1e-6);
  }
}

TEST_CASE("single-antenna semi-passive reduces to alignment") {
  std::mt19937_64 rng(54);
  Rng opt(1);
  for (int rep = 0; rep < 5; ++rep) {
    const auto ch = random_instance(8, 1, 2, rng);
    const auto res = optimize_p3(ch, 100, opt);
    const double ref = std::pow(ch.bs_to_irs.cwiseAbs().sum(), 2);
    CHECK(res.achieved == doctest::Approx(ref).epsilon(1e-6));
    CHECK(res.achieved <= res.sdp_objective * (1 + 1e-6));
    CHECK(tx_gain(ch, res.phases.coefficients()) == doctest::Approx(res.achieved).epsilon(1e-9));
  }
}

TEST_CASE("tiny instances reach the phase-grid optimum") {
  std::mt19937_64 rng(55);
  for (int seed = 0; seed < 5; ++seed) {
    const auto ch = random_instance(4, 2, 2, rng);
    Rng opt(seed);
    const auto p3 = optimize_p3(ch, 100, opt);
    const double g3 = oracle::grid_search(4, 16, [&](const ComplexVector& v) { return tx_gain(ch, v); });
    CHECK(p3.achieved >= 0.95 * g3);
    CHECK(p3.sdp_objective >= g3 * (1 - 1e-9));

    const auto p2 = optimize_p2(ch, {}, 100, opt);
    const double g2 = oracle::grid_search(
        4, 16, [&](const ComplexVector& v) { return tx_gain(ch, v) * rx_gain(ch, v); });
    CHECK(p2.achieved >= 0.95 * g2);
    const auto& obj = p2.trace.objective_per_iteration;
    for (std::size_t i = 1; i < obj.size(); ++i) CHECK(obj[i] >= obj[i - 1]);
    for (Eigen::Index i = 0; i < p2.trace.chosen_v.size(); ++i)
      CHECK(std::abs(std::abs(p2.trace.chosen_v(i)) - 1.0) < 1e-12);
  }
}

TEST_CASE("symmetric product reduces to the squared single form") {
  std::mt19937_64 rng(56);
  const HermitianMatrix r(oracle::random_psd(6, 2, rng));
  Rng a(3);
  Rng b(3);
  const auto p2 = maximize_product({r, r}, {}, 200, a);
  const auto p3 = maximize_quadratic(r, 200, b);
  CHECK(p2.achieved >= 0.95 * p3.achieved * p3.achieved);
  CHECK(p2.achieved <= p3.sdp_objective * p3.sdp_objective * (1 + 1e-6));
}

TEST_CASE("random phases") {
  Rng a(7);
  Rng b(7);
  const auto pa = random_phases(10, a);
  const auto pb = random_phases(10, b);
  CHECK(pa.phases() == pb.phases());

  std::mt19937_64 rng(57);
  const ComplexVector h = oracle::random_unit_modulus(16, rng);
  const ComplexVector s = oracle::random_unit_modulus(16, rng);
  double mean = 0.0;
  constexpr int kDraws = 20000;
  for (int k = 0; k < kDraws; ++k) {
    const auto p = random_phases(16, a);
    mean += std::norm((h.array() * p.coefficients().array() * s.array()).sum());
    CHECK(p.phases().minCoeff() > 0.0);
    CHECK(p.phases().maxCoeff() <= 2 * std::numbers::pi);
  }
  mean /= kDraws;
  // each draw has standard deviation about N
  CHECK(std::abs(mean - 16.0) < 4.0 * 16.0 / std::sqrt(double(kDraws)));

  for (int k = 0; k < 10; ++k) {
    const auto p = random_phases(1, a);
    CHECK(std::norm(p.coefficients()(0)) == doctest::Approx(1.0));
  }
}
