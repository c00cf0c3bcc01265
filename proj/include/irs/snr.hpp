// SPDX-License-Identifier: Apache-2.0
//
// Sensing SNR of the fully-passive (BS-IRS-target-IRS-BS) and semi-passive
// (BS-IRS-target-IRS sensors) architectures.
#pragma once

#include "irs/channel.hpp"
#include "irs/linalg.hpp"

namespace irs {

/// Phase shifts of the N reflecting elements, each wrapped into (0, 2pi].
class ReflectPattern {
 public:
  ReflectPattern() = default;
  explicit ReflectPattern(RealVector phases);
  /// Phases of the given (nonzero) coefficients.
  static ReflectPattern from_coefficients(const ComplexVector& v);

  [[nodiscard]] Eigen::Index size() const { return phases_.size(); }
  [[nodiscard]] const RealVector& phases() const { return phases_; }
  /// Diagonal of Phi: exp(j phi_n).
  [[nodiscard]] ComplexVector coefficients() const;

 private:
  RealVector phases_;
};

/// Hermitian PSD transmit covariance R with tr(R) <= P0.
class TransmitCovariance {
 public:
  /// Throws InvalidCovariance when R has an eigenvalue below
  /// -1e-9 * max(||R||_F, P0) or tr(R) > P0 (1 + 1e-9).
  TransmitCovariance(HermitianMatrix r, double p0);

  [[nodiscard]] const HermitianMatrix& matrix() const { return r_; }
  [[nodiscard]] double power_budget() const { return p0_; }
  [[nodiscard]] TransmitCovariance scaled(double factor) const;

 private:
  HermitianMatrix r_;
  double p0_;
};

/// Phi^T a, i.e. a with element n rotated by phi_n.
ComplexVector reflected_steering(const ReflectPattern& phi, const ChannelSet& ch);

/// ||G_r Phi^T a||^2
double receive_beampattern(const ReflectPattern& phi, const ChannelSet& ch);
/// a^T Phi G_t R G_t^H Phi^H a^*
double transmit_beampattern(const TransmitCovariance& r, const ReflectPattern& phi,
                            const ChannelSet& ch);
/// ||G_t^T Phi^T a||^2
double effective_channel_gain(const ReflectPattern& phi, const ChannelSet& ch);

double snr_fully_passive(const TransmitCovariance& r, const ReflectPattern& phi,
                         const ChannelSet& ch, double sigma2);
double snr_semi_passive(const TransmitCovariance& r, const ReflectPattern& phi,
                        const ChannelSet& ch, double sigma2);

/// P0 u u^H / ||u||^2 with u = G_t^H Phi^H a^*.
TransmitCovariance mrt_covariance(const ReflectPattern& phi, const ChannelSet& ch, double p0);

/// SNRs under MRT, in closed form.
double snr_opt_tx_fully(const ReflectPattern& phi, const ChannelSet& ch, double p0, double sigma2);
double snr_opt_tx_semi(const ReflectPattern& phi, const ChannelSet& ch, double p0, double sigma2);

/// (P0 / M_t) I
TransmitCovariance isotropic_covariance(double p0, int m_t);

double to_db(double linear);
double from_db(double db);

}  // namespace irs
