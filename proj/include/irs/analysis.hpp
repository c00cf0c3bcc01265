// SPDX-License-Identifier: Apache-2.0
//
// Closed-form SNR laws, Rayleigh expectation bounds and crossover thresholds.
#pragma once

#include <span>
#include <utility>

#include "irs/channel.hpp"

namespace irs {

enum class ChannelModel { kLos, kRayleigh };

struct SnrPair {
  double fully = 0.0;
  double semi = 0.0;
};

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// Smallest admissible N is `threshold_integer` (strictly above the
/// continuous threshold).
struct CrossoverReport {
  double threshold_continuous = 0.0;
  int threshold_integer = 0;
  ChannelModel context = ChannelModel::kLos;
};

/// Optimal joint-beamforming SNRs under LoS:
///   fully = P0 |alpha|^2 L^2 M_t M_r N^4 / sigma^2
///   semi  = P0 |alpha|^2 L   M_t M_r N^2 / sigma^2
/// with L the BS-IRS path loss.
SnrPair closed_form_snr_los(const SystemConfig& config, int n);

/// N > 1 / sqrt(L).
CrossoverReport los_crossover(const SystemConfig& config);

/// Bounds on E[max_v (v^H R1 v)(v^H R2 v)].
BoundPair rayleigh_bounds_fully(int n, int m_t, int m_r);

/// Bounds on the semi-passive counterpart, as stated:
///   M_t (pi/4 N^2 + (M_r - 1) N) <= E <= pi M_t M_r N^2 / 4.
BoundPair rayleigh_bounds_semi(int n, int m_t, int m_r);

/// N > 2 sqrt(M_t M_r / (pi L)) - (4 / pi)(max(M_t, M_r) - 1).
CrossoverReport rayleigh_crossover(const SystemConfig& config);

/// Least-squares slope of log(value) against log(N).
double fit_scaling_exponent(std::span<const std::pair<double, double>> points);

/// floor(x) + 1
int smallest_integer_above(double x);

}  // namespace irs
