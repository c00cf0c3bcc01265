// SPDX-License-Identifier: Apache-2.0
//
// Reflective beamforming: closed-form LoS alignment, SDR with Gaussian
// randomization for the single-quadratic (semi-passive) problem, and
// SDR + SCA + randomization for the product (fully-passive) problem.
#pragma once

#include <vector>

#include "irs/channel.hpp"
#include "irs/linalg.hpp"
#include "irs/sdp.hpp"
#include "irs/snr.hpp"

namespace irs {

struct QuadraticForms {
  HermitianMatrix r1;  // diag(a^*) Gr^H Gr diag(a), normalized channels
  HermitianMatrix r2;  // diag(a^*) Gt^* Gt^T diag(a), normalized channels
};

struct ScaOptions {
  int max_iter = 50;
  double rel_improvement = 1e-4;
  /// Objective drops below this relative size are attributed to inexact
  /// SDP solves and end the iteration; larger drops raise ScaStalled.
  double stall_slack = 1e-6;
  bool random_restart = true;
  SdpOptions sdp;
};

struct ScaTrace {
  std::vector<double> objective_per_iteration;  // tr(R1 V) tr(R2 V), accepted iterates
  std::vector<bool> sdp_converged_flags;
  HermitianMatrix final_v;
  ComplexVector chosen_v;
};

struct P3Result {
  ReflectPattern phases;
  double achieved = 0.0;       // v^H R2 v
  double sdp_objective = 0.0;  // relaxation upper bound
  int solver_warnings = 0;
};

struct P2Result {
  ReflectPattern phases;
  double achieved = 0.0;  // (v^H R1 v)(v^H R2 v)
  ScaTrace trace;
  int solver_warnings = 0;
};

/// phi_n = -arg(h_n) - arg(a_n); makes every term of h^T Phi^T a real positive.
ReflectPattern los_optimal_phases(const ComplexVector& h, const ComplexVector& a);

/// R1, R2 for the channel with the BS-IRS path loss divided out.
QuadraticForms build_r1_r2(const ChannelSet& ch);

/// First-order expansion of tr(R1 V) tr(R2 V) around V_r, evaluated at V.
double sca_taylor_bound(const HermitianMatrix& v, const HermitianMatrix& v_r,
                        const HermitianMatrix& r1, const HermitianMatrix& r2);

/// Unit-modulus candidates exp(j arg(r)), r ~ CN(0, V); returns the best
/// under `score` (first best wins ties).
template <typename Score>
ComplexVector gaussian_randomization(const HermitianMatrix& v, int count, Rng& rng, Score&& score);

/// Maximizes v^H R v over unit-modulus v by SDR + randomization.
P3Result maximize_quadratic(const HermitianMatrix& r, int rand_count, Rng& rng,
                            const SdpOptions& sdp = {});

/// Semi-passive reflective beamforming: maximize ||Gt^T Phi^T a||^2.
P3Result optimize_p3(const ChannelSet& ch, int rand_count, Rng& rng, const SdpOptions& sdp = {});

/// Maximizes (v^H R1 v)(v^H R2 v) over unit-modulus v by SDR + SCA + randomization.
P2Result maximize_product(const QuadraticForms& forms, const ScaOptions& opts, int rand_count,
                          Rng& rng);

/// Fully-passive reflective beamforming:
/// maximize ||Gt^T Phi^T a||^2 ||Gr Phi^T a||^2.
P2Result optimize_p2(const ChannelSet& ch, const ScaOptions& opts, int rand_count, Rng& rng);

/// I.i.d. uniform phases on (0, 2pi].
ReflectPattern random_phases(int count, Rng& rng);

// ---------------------------------------------------------------------------

template <typename Score>
ComplexVector gaussian_randomization(const HermitianMatrix& v, int count, Rng& rng,
                                     Score&& score) {
  const ComplexMatrix factor = sqrt_factor(v);
  ComplexVector best = ComplexVector::Ones(v.dim());
  double best_score = -1.0;
  for (int k = 0; k < count; ++k) {
    ComplexVector r = sample_cn(factor, rng);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double mag = std::abs(r(i));
      r(i) = mag > 0.0 ? r(i) / mag : Complex{1.0, 0.0};
    }
    const double s = score(r);
    if (s > best_score) {
      best_score = s;
      best = std::move(r);
    }
  }
  return best;
}

}  // namespace irs
