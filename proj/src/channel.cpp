// SPDX-License-Identifier: Apache-2.0
#include "irs/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "irs/errors.hpp"

namespace irs {

namespace {

bool same_point(const Point2& p, const Point2& q) { return p.x == q.x && p.y == q.y; }

double distance(const Point2& p, const Point2& q) { return std::hypot(p.x - q.x, p.y - q.y); }

void require(bool ok, const char* what) {
  if (!ok) {
    throw ConfigInvalid(what);
  }
}

}  // namespace

void SystemConfig::validate() const {
  require(m_t >= 1, "m_t must be >= 1");
  require(m_r >= 1, "m_r must be >= 1");
  require(n >= 1, "n must be >= 1");
  require(std::isfinite(p0) && p0 > 0.0, "p0 must be positive");
  require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
  require(std::isfinite(k0) && k0 > 0.0, "k0 must be positive");
  require(std::isfinite(d0) && d0 > 0.0, "d0 must be positive");
  require(std::isfinite(rcs) && rcs > 0.0, "rcs must be positive");
  require(std::isfinite(spacing_ratio) && spacing_ratio > 0.0, "spacing_ratio must be positive");
  require(std::isfinite(alpha_bs_irs) && std::isfinite(alpha_irs_target),
          "path-loss exponents must be finite");
  require(!same_point(bs_pos, irs_pos) && !same_point(bs_pos, target_pos) &&
              !same_point(irs_pos, target_pos),
          "bs, irs and target positions must be pairwise distinct");
}

SystemConfig SystemConfig::with_elements(int elements) const {
  SystemConfig copy = *this;
  copy.n = elements;
  return copy;
}

ComplexVector steering_vector(int count, double spacing_ratio, double angle) {
  ComplexVector v(count);
  const double step = std::numbers::pi * spacing_ratio * std::sin(angle);
  for (int k = 0; k < count; ++k) {
    v(k) = std::polar(1.0, step * (2.0 * k - (count - 1)));
  }
  return v;
}

double path_loss(double distance, double exponent, const SystemConfig& config) {
  if (!(distance > 0.0)) {
    std::ostringstream os;
    os << "path loss needs a positive distance, got " << distance;
    throw NonPositiveDistance(os.str());
  }
  return config.k0 * std::pow(distance / config.d0, -exponent);
}

Geometry geometry(const SystemConfig& config) {
  Geometry g;
  g.d_bs_irs = distance(config.bs_pos, config.irs_pos);
  g.d_irs_target = distance(config.irs_pos, config.target_pos);
  // Broadside of the IRS is -y.
  g.theta = std::atan2(config.target_pos.x - config.irs_pos.x,
                       -(config.target_pos.y - config.irs_pos.y));
  g.theta_bs = std::atan2(config.bs_pos.x - config.irs_pos.x, -(config.bs_pos.y - config.irs_pos.y));
  g.theta_bs_array =
      std::atan2(config.irs_pos.x - config.bs_pos.x, config.irs_pos.y - config.bs_pos.y);
  return g;
}

Complex target_coefficient(const SystemConfig& config) {
  const Geometry g = geometry(config);
  const double loss = path_loss(g.d_irs_target, config.alpha_irs_target, config);
  return {std::sqrt(config.rcs) * loss, 0.0};
}

namespace {

ChannelSet common_parts(const SystemConfig& config, const Geometry& g) {
  ChannelSet ch;
  ch.target_steering = steering_vector(config.n, config.spacing_ratio, g.theta);
  ch.sensor_steering = steering_vector(config.m_r, config.spacing_ratio, g.theta);
  ch.alpha = target_coefficient(config);
  ch.bs_irs_path_loss = path_loss(g.d_bs_irs, config.alpha_bs_irs, config);
  return ch;
}

}  // namespace

ChannelSet los_channels(const SystemConfig& config) {
  config.validate();
  const Geometry g = geometry(config);
  ChannelSet ch = common_parts(config, g);
  LosFactors f;
  f.irs_steering = steering_vector(config.n, config.spacing_ratio, g.theta_bs);
  f.bs_tx_steering = steering_vector(config.m_t, config.spacing_ratio, g.theta_bs_array);
  f.bs_rx_steering = steering_vector(config.m_r, config.spacing_ratio, g.theta_bs_array);
  const double amp = std::sqrt(ch.bs_irs_path_loss);
  ch.bs_to_irs = amp * f.irs_steering * f.bs_tx_steering.transpose();
  ch.irs_to_bs = amp * f.bs_rx_steering * f.irs_steering.transpose();
  ch.los = std::move(f);
  return ch;
}

ChannelSet rayleigh_channels(const SystemConfig& config, Rng& rng) {
  config.validate();
  const Geometry g = geometry(config);
  ChannelSet ch = common_parts(config, g);
  const double amp = std::sqrt(ch.bs_irs_path_loss);
  ch.bs_to_irs.resize(config.n, config.m_t);
  for (Eigen::Index j = 0; j < ch.bs_to_irs.cols(); ++j) {
    for (Eigen::Index i = 0; i < ch.bs_to_irs.rows(); ++i) {
      ch.bs_to_irs(i, j) = amp * standard_cn(rng);
    }
  }
  ch.irs_to_bs.resize(config.m_r, config.n);
  const int shared = config.reciprocal ? std::min(config.m_t, config.m_r) : 0;
  for (int m = 0; m < shared; ++m) {
    ch.irs_to_bs.row(m) = ch.bs_to_irs.col(m).transpose();
  }
  for (Eigen::Index j = 0; j < ch.irs_to_bs.cols(); ++j) {
    for (Eigen::Index i = shared; i < ch.irs_to_bs.rows(); ++i) {
      ch.irs_to_bs(i, j) = amp * standard_cn(rng);
    }
  }
  return ch;
}

}  // namespace irs
