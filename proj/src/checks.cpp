// SPDX-License-Identifier: Apache-2.0
#include "irs/checks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "irs/analysis.hpp"
#include "irs/beamform.hpp"
#include "irs/snr.hpp"

namespace irs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

/// Random trace-P0 covariance: normalized W W^H with a random rank.
TransmitCovariance random_covariance(int m_t, double p0, Rng& rng) {
  std::uniform_int_distribution<int> rank_dist(1, m_t);
  const int rank = rank_dist(rng);
  ComplexMatrix w(m_t, rank);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = standard_cn(rng);
  ComplexMatrix r = w * w.adjoint();
  r *= p0 / r.trace().real();
  return {HermitianMatrix(r), p0};
}

CheckResult steering_invariants(Rng& rng) {
  std::uniform_int_distribution<int> count(1, 64);
  std::uniform_real_distribution<double> ratio(0.05, 2.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double worst_mod = 0.0;
  double worst_norm = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int n = count(rng);
    const ComplexVector v = steering_vector(n, ratio(rng), angle(rng));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      worst_mod = std::max(worst_mod, std::abs(std::abs(v(i)) - 1.0));
    }
    worst_norm = std::max(worst_norm, std::abs(v.squaredNorm() - n));
  }
  return {"steering vectors: unit modulus and ||a||^2 = N",
          worst_mod <= 1e-12 && worst_norm <= 1e-10,
          "max modulus error " + fmt(worst_mod) + ", max norm error " + fmt(worst_norm)};
}

CheckResult comparison_condition(const SystemConfig& base, Rng& rng) {
  std::uniform_int_distribution<int> elements(1, 24);
  // Spreads ||G_r Phi^T a||^2 on both sides of M_r.
  std::uniform_real_distribution<double> log_gain(0.5, 2.5);
  int mismatches = 0;
  int fully_wins = 0;
  constexpr int kInstances = 500;
  for (int k = 0; k < kInstances; ++k) {
    SystemConfig cfg = base.with_elements(elements(rng));
    ChannelSet ch = rayleigh_channels(cfg, rng);
    const double scale = std::pow(10.0, log_gain(rng));
    ch.bs_to_irs *= scale;
    ch.irs_to_bs *= scale;
    const ReflectPattern phi = random_phases(cfg.n, rng);
    const TransmitCovariance r = random_covariance(cfg.m_t, cfg.p0, rng);
    const bool fully_better = snr_fully_passive(r, phi, ch, cfg.sigma2) >
                              snr_semi_passive(r, phi, ch, cfg.sigma2);
    const bool condition = receive_beampattern(phi, ch) > cfg.m_r;
    mismatches += fully_better != condition ? 1 : 0;
    fully_wins += fully_better ? 1 : 0;
  }
  return {"fully > semi iff ||G_r Phi^T a||^2 > M_r (500 instances)", mismatches == 0,
          std::to_string(mismatches) + " mismatches, fully ahead in " + std::to_string(fully_wins)};
}

CheckResult mrt_dominance(const SystemConfig& base, Rng& rng) {
  int violations = 0;
  for (int inst = 0; inst < 5; ++inst) {
    const SystemConfig cfg = base.with_elements(8);
    const ChannelSet ch = rayleigh_channels(cfg, rng);
    const ReflectPattern phi = random_phases(cfg.n, rng);
    const TransmitCovariance mrt = mrt_covariance(phi, ch, cfg.p0);
    const double best_fully = snr_fully_passive(mrt, phi, ch, cfg.sigma2);
    const double best_semi = snr_semi_passive(mrt, phi, ch, cfg.sigma2);
    for (int k = 0; k < 1000; ++k) {
      const TransmitCovariance r = random_covariance(cfg.m_t, cfg.p0, rng);
      violations += snr_fully_passive(r, phi, ch, cfg.sigma2) > best_fully * (1 + 1e-12) ? 1 : 0;
      violations += snr_semi_passive(r, phi, ch, cfg.sigma2) > best_semi * (1 + 1e-12) ? 1 : 0;
    }
  }
  return {"MRT dominates 1000 random covariances (5 instances)", violations == 0,
          std::to_string(violations) + " violations"};
}

CheckResult los_closed_form(const SystemConfig& base) {
  double worst = 0.0;
  for (int n = 10; n <= 100; ++n) {
    const SystemConfig cfg = base.with_elements(n);
    const ChannelSet ch = los_channels(cfg);
    const ReflectPattern phi = los_optimal_phases(ch.los->irs_steering, ch.target_steering);
    const TransmitCovariance r = mrt_covariance(phi, ch, cfg.p0);
    const SnrPair expected = closed_form_snr_los(cfg, n);
    worst = std::max(worst, std::abs(to_db(snr_fully_passive(r, phi, ch, cfg.sigma2)) -
                                     to_db(expected.fully)));
    worst = std::max(worst, std::abs(to_db(snr_semi_passive(r, phi, ch, cfg.sigma2)) -
                                     to_db(expected.semi)));
  }
  const double gain_fully = to_db(closed_form_snr_los(base, 100).fully) -
                            to_db(closed_form_snr_los(base, 10).fully);
  const double gain_semi = to_db(closed_form_snr_los(base, 100).semi) -
                           to_db(closed_form_snr_los(base, 10).semi);
  const bool ok = worst <= 1e-6 && std::abs(gain_fully - 40.0) < 1e-9 &&
                  std::abs(gain_semi - 20.0) < 1e-9;
  return {"LoS pipeline matches N^4 / N^2 closed forms (N = 10..100)", ok,
          "max deviation " + fmt(worst) + " dB, gains " + fmt(gain_fully) + " / " +
              fmt(gain_semi) + " dB"};
}

CheckResult los_threshold(const SystemConfig& base) {
  const CrossoverReport report = los_crossover(base);
  bool ok = true;
  for (int n = std::max(1, report.threshold_integer - 5); n <= report.threshold_integer + 5; ++n) {
    const SnrPair s = closed_form_snr_los(base, n);
    ok = ok && ((s.fully > s.semi) == (n > report.threshold_continuous));
  }
  return {"LoS: fully > semi iff N > 1/sqrt(L)", ok,
          "threshold " + fmt(report.threshold_continuous) + ", first N " +
              std::to_string(report.threshold_integer)};
}

CheckResult bound_ordering() {
  // Both pairs are ordered for every N >= 2; at N = 1 the lower bounds exceed
  // the upper ones unless the relevant antenna counts are 1.
  int unexpected = 0;
  for (int n = 1; n <= 50; ++n) {
    for (int mt = 1; mt <= 8; ++mt) {
      for (int mr = 1; mr <= 8; ++mr) {
        const BoundPair f = rayleigh_bounds_fully(n, mt, mr);
        const BoundPair s = rayleigh_bounds_semi(n, mt, mr);
        const bool f_expected = n >= 2 || (mt == 1 && mr == 1);
        const bool s_expected = n >= 2 || mr == 1;
        unexpected += (f.lower <= f.upper * (1 + 1e-12)) != f_expected ? 1 : 0;
        unexpected += (s.lower <= s.upper * (1 + 1e-12)) != s_expected ? 1 : 0;
      }
    }
  }
  return {"Rayleigh bounds ordered for N >= 2 (N 1..50, M_t, M_r 1..8)", unexpected == 0,
          std::to_string(unexpected) + " grid points off the N >= 2 characterization"};
}

CheckResult rayleigh_threshold(const SystemConfig& base) {
  const CrossoverReport report = rayleigh_crossover(base);
  const double loss = path_loss(geometry(base).d_bs_irs, base.alpha_bs_irs, base);
  const int n = report.threshold_integer;
  const double fully = loss * loss * rayleigh_bounds_fully(n, base.m_t, base.m_r).lower;
  const double semi = loss * rayleigh_bounds_semi(n, base.m_t, base.m_r).upper;
  return {"Rayleigh threshold: L^2 lower(fully) >= L upper(semi) at first N", fully >= semi,
          "threshold " + fmt(report.threshold_continuous) + ", N " + std::to_string(n) + ": " +
              fmt(fully) + " vs " + fmt(semi)};
}

}  // namespace

std::vector<CheckResult> run_consistency_checks(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  std::vector<CheckResult> out;
  out.push_back(steering_invariants(rng));
  out.push_back(comparison_condition(config, rng));
  out.push_back(mrt_dominance(config, rng));
  out.push_back(los_closed_form(config));
  out.push_back(los_threshold(config));
  out.push_back(bound_ordering());
  out.push_back(rayleigh_threshold(config));
  return out;
}

}  // namespace irs
