// SPDX-License-Identifier: Apache-2.0
#include "irs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "irs/errors.hpp"

namespace irs {

namespace {

constexpr double kPi = std::numbers::pi;

double bs_irs_loss(const SystemConfig& config) {
  return path_loss(geometry(config).d_bs_irs, config.alpha_bs_irs, config);
}

void require_counts(int n, int m_t, int m_r) {
  if (n < 1 || m_t < 1 || m_r < 1) {
    throw std::invalid_argument("N, M_t and M_r must all be >= 1");
  }
}

}  // namespace

int smallest_integer_above(double x) { return static_cast<int>(std::floor(x)) + 1; }

SnrPair closed_form_snr_los(const SystemConfig& config, int n) {
  const double loss = bs_irs_loss(config);
  const double common = config.p0 * std::norm(target_coefficient(config)) * config.m_t *
                        config.m_r / config.sigma2;
  const double n2 = static_cast<double>(n) * n;
  return {common * loss * loss * n2 * n2, common * loss * n2};
}

CrossoverReport los_crossover(const SystemConfig& config) {
  const double threshold = 1.0 / std::sqrt(bs_irs_loss(config));
  return {threshold, smallest_integer_above(threshold), ChannelModel::kLos};
}

BoundPair rayleigh_bounds_fully(int n, int m_t, int m_r) {
  require_counts(n, m_t, m_r);
  const double nn = n;
  const double lower = (kPi / 4.0 * nn * nn + (m_r - 1) * nn) * (kPi / 4.0 * nn * nn + (m_t - 1) * nn);
  const double upper = kPi * kPi * m_t * m_r * std::pow(nn, 4) / 16.0;
  return {lower, upper};
}

BoundPair rayleigh_bounds_semi(int n, int m_t, int m_r) {
  require_counts(n, m_t, m_r);
  const double nn = n;
  return {m_t * (kPi / 4.0 * nn * nn + (m_r - 1) * nn), kPi * m_t * m_r * nn * nn / 4.0};
}

CrossoverReport rayleigh_crossover(const SystemConfig& config) {
  const double loss = bs_irs_loss(config);
  const double threshold = 2.0 * std::sqrt(config.m_t * config.m_r / (kPi * loss)) -
                           4.0 / kPi * (std::max(config.m_t, config.m_r) - 1);
  return {threshold, smallest_integer_above(threshold), ChannelModel::kRayleigh};
}

double fit_scaling_exponent(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("scaling fit needs at least three points");
  }
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [n, value] : points) {
    if (!(n > 0.0) || !(value > 0.0)) {
      std::ostringstream os;
      os << "scaling fit needs positive data, got (" << n << ", " << value << ")";
      throw NonPositiveData(os.str());
    }
    sx += std::log(n);
    sy += std::log(value);
  }
  const double count = static_cast<double>(points.size());
  const double mx = sx / count;
  const double my = sy / count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [n, value] : points) {
    const double dx = std::log(n) - mx;
    sxy += dx * (std::log(value) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) {
    throw NonPositiveData("scaling fit needs at least two distinct N values");
  }
  return sxy / sxx;
}

}  // namespace irs
