// SPDX-License-Identifier: Apache-2.0
//
// Scenario geometry, ULA steering vectors, path loss and the BS-IRS channel
// realizations (line-of-sight and Rayleigh).
#pragma once

#include <cstdint>
#include <optional>

#include "irs/linalg.hpp"

namespace irs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Every scenario parameter, in linear units.
///
/// Defaults reproduce the reference deployment: BS at the origin, IRS at
/// (1, 1), target at (1, -5), 5 transmit / 5 receive antennas, 30 dBm
/// transmit power, -90 dBm noise, -30 dB reference loss at 1 m, path-loss
/// exponents 2.2 (BS-IRS) and 2.0 (IRS-target).
struct SystemConfig {
  Point2 bs_pos{0.0, 0.0};
  Point2 irs_pos{1.0, 1.0};
  Point2 target_pos{1.0, -5.0};
  int m_t = 5;
  int m_r = 5;
  int n = 16;
  double spacing_ratio = 0.5;  // element spacing over wavelength
  double p0 = 1.0;             // W
  double sigma2 = 1e-12;       // W
  double k0 = 1e-3;
  double d0 = 1.0;  // m
  double alpha_bs_irs = 2.2;
  double alpha_irs_target = 2.0;
  double rcs = 1.0;
  int symbols = 256;  // block length; carried for completeness, no SNR depends on it
  /// Rayleigh draws: when true the IRS-BS link reuses the BS-IRS coefficients
  /// of the first min(M_t, M_r) antennas (G_r row m = column m of G_t),
  /// otherwise both links are drawn independently.
  bool reciprocal = true;

  /// Throws ConfigInvalid on the first violated constraint.
  void validate() const;
  [[nodiscard]] SystemConfig with_elements(int elements) const;
};

struct Geometry {
  double d_bs_irs = 0.0;
  double d_irs_target = 0.0;
  double theta = 0.0;     // target angle from IRS broadside
  double theta_bs = 0.0;  // BS angle from IRS broadside
  double theta_bs_array = 0.0;  // IRS angle seen from the BS array broadside
};

/// Line-of-sight factorization G_t = sqrt(L) h g_t^T, G_r = sqrt(L) g_r h^T.
struct LosFactors {
  ComplexVector irs_steering;  // h, length N
  ComplexVector bs_tx_steering;  // g_t, length M_t
  ComplexVector bs_rx_steering;  // g_r, length M_r
};

struct ChannelSet {
  ComplexMatrix bs_to_irs;  // G_t, N x M_t
  ComplexMatrix irs_to_bs;  // G_r, M_r x N
  ComplexVector target_steering;  // a, length N
  ComplexVector sensor_steering;  // b, length M_r
  Complex alpha{0.0, 0.0};
  double bs_irs_path_loss = 1.0;  // L(d) applied to both BS-IRS links
  std::optional<LosFactors> los;

  [[nodiscard]] Eigen::Index elements() const { return target_steering.size(); }
  [[nodiscard]] Eigen::Index tx_antennas() const { return bs_to_irs.cols(); }
  [[nodiscard]] Eigen::Index rx_antennas() const { return irs_to_bs.rows(); }
};

/// Entry k is exp(j pi (2k - (n-1)) ratio sin(theta)), centred on the array.
ComplexVector steering_vector(int count, double spacing_ratio, double angle);

/// K0 (d / d0)^(-exponent).
double path_loss(double distance, double exponent, const SystemConfig& config);

/// The IRS array lies along x with broadside pointing toward -y; the BS array
/// lies along x with broadside toward +y. Angles are atan2 from broadside.
Geometry geometry(const SystemConfig& config);

/// Real coefficient with |alpha|^2 = rcs * L_target(d_irs_target)^2.
Complex target_coefficient(const SystemConfig& config);

ChannelSet los_channels(const SystemConfig& config);

/// G_t, G_r with i.i.d. CN(0, L) entries. G_t is drawn first (column-major);
/// G_r then takes its shared rows from G_t (reciprocal) or draws all of them.
ChannelSet rayleigh_channels(const SystemConfig& config, Rng& rng);

}  // namespace irs
