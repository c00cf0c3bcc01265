// SPDX-License-Identifier: Apache-2.0
#include "irs/snr.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "irs/errors.hpp"

namespace irs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w <= 0.0) {
    w += kTwoPi;
  }
  return w;
}

void check_dims(const ReflectPattern& phi, const ChannelSet& ch) {
  const Eigen::Index n = ch.elements();
  if (phi.size() != n || ch.bs_to_irs.rows() != n || ch.irs_to_bs.cols() != n ||
      ch.sensor_steering.size() != ch.irs_to_bs.rows()) {
    std::ostringstream os;
    os << "reflect pattern has " << phi.size() << " phases but the channel has " << n
       << " elements (G_t " << ch.bs_to_irs.rows() << "x" << ch.bs_to_irs.cols() << ", G_r "
       << ch.irs_to_bs.rows() << "x" << ch.irs_to_bs.cols() << ")";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

ReflectPattern::ReflectPattern(RealVector phases) : phases_(std::move(phases)) {
  for (Eigen::Index k = 0; k < phases_.size(); ++k) {
    if (!std::isfinite(phases_(k))) {
      throw std::invalid_argument("reflection phase is not finite");
    }
    phases_(k) = wrap_phase(phases_(k));
  }
}

ReflectPattern ReflectPattern::from_coefficients(const ComplexVector& v) {
  RealVector phases(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    phases(k) = std::arg(v(k));
  }
  return ReflectPattern(std::move(phases));
}

ComplexVector ReflectPattern::coefficients() const {
  ComplexVector v(phases_.size());
  for (Eigen::Index k = 0; k < phases_.size(); ++k) {
    v(k) = std::polar(1.0, phases_(k));
  }
  return v;
}

TransmitCovariance::TransmitCovariance(HermitianMatrix r, double p0) : r_(std::move(r)), p0_(p0) {
  if (!(p0 > 0.0)) {
    throw InvalidCovariance("power budget must be positive");
  }
  const double tr = r_.trace();
  if (tr > p0 * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "covariance trace " << tr << " exceeds the power budget " << p0;
    throw InvalidCovariance(os.str());
  }
  if (r_.dim() > 0) {
    const double min_eig = hermitian_eig(r_).values.minCoeff();
    if (min_eig < -1e-9 * std::max(r_.frobenius_norm(), p0)) {
      std::ostringstream os;
      os << "covariance is not PSD (min eigenvalue " << min_eig << ")";
      throw InvalidCovariance(os.str());
    }
  }
}

TransmitCovariance TransmitCovariance::scaled(double factor) const {
  return {HermitianMatrix::from_trusted(factor * r_.matrix()), p0_ * std::max(factor, 1.0)};
}

ComplexVector reflected_steering(const ReflectPattern& phi, const ChannelSet& ch) {
  check_dims(phi, ch);
  return phi.coefficients().cwiseProduct(ch.target_steering);
}

double receive_beampattern(const ReflectPattern& phi, const ChannelSet& ch) {
  return (ch.irs_to_bs * reflected_steering(phi, ch)).squaredNorm();
}

double effective_channel_gain(const ReflectPattern& phi, const ChannelSet& ch) {
  return (ch.bs_to_irs.transpose() * reflected_steering(phi, ch)).squaredNorm();
}

double transmit_beampattern(const TransmitCovariance& r, const ReflectPattern& phi,
                            const ChannelSet& ch) {
  if (r.matrix().dim() != ch.tx_antennas()) {
    throw DimensionMismatch("covariance size does not match the transmit antenna count");
  }
  const ComplexVector u = (ch.bs_to_irs.transpose() * reflected_steering(phi, ch)).conjugate();
  return std::max(r.matrix().quadratic_form(u), 0.0);
}

double snr_fully_passive(const TransmitCovariance& r, const ReflectPattern& phi,
                         const ChannelSet& ch, double sigma2) {
  return std::norm(ch.alpha) * receive_beampattern(phi, ch) * transmit_beampattern(r, phi, ch) /
         sigma2;
}

double snr_semi_passive(const TransmitCovariance& r, const ReflectPattern& phi,
                        const ChannelSet& ch, double sigma2) {
  return std::norm(ch.alpha) * ch.sensor_steering.squaredNorm() *
         transmit_beampattern(r, phi, ch) / sigma2;
}

TransmitCovariance mrt_covariance(const ReflectPattern& phi, const ChannelSet& ch, double p0) {
  const ComplexVector u = (ch.bs_to_irs.transpose() * reflected_steering(phi, ch)).conjugate();
  const double gain = u.squaredNorm();
  if (gain < 1e-30) {
    std::ostringstream os;
    os << "effective channel ||G_t^T Phi^T a||^2 = " << gain << " is numerically zero";
    throw DegenerateChannel(os.str());
  }
  ComplexMatrix r = (p0 / gain) * (u * u.adjoint());
  r.diagonal() = r.diagonal().real().cast<Complex>();
  return {HermitianMatrix::from_trusted(std::move(r)), p0};
}

double snr_opt_tx_fully(const ReflectPattern& phi, const ChannelSet& ch, double p0, double sigma2) {
  return p0 * std::norm(ch.alpha) * receive_beampattern(phi, ch) * effective_channel_gain(phi, ch) /
         sigma2;
}

double snr_opt_tx_semi(const ReflectPattern& phi, const ChannelSet& ch, double p0, double sigma2) {
  return p0 * std::norm(ch.alpha) * ch.sensor_steering.squaredNorm() *
         effective_channel_gain(phi, ch) / sigma2;
}

TransmitCovariance isotropic_covariance(double p0, int m_t) {
  if (m_t < 1) {
    throw DimensionMismatch("isotropic covariance needs at least one antenna");
  }
  return {HermitianMatrix::from_trusted((p0 / m_t) * ComplexMatrix::Identity(m_t, m_t)), p0};
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace irs
