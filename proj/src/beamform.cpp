// SPDX-License-Identifier: Apache-2.0
#include "irs/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "irs/errors.hpp"

namespace irs {

ReflectPattern los_optimal_phases(const ComplexVector& h, const ComplexVector& a) {
  if (h.size() != a.size()) {
    throw DimensionMismatch("los_optimal_phases: h and a differ in length");
  }
  RealVector phases(h.size());
  for (Eigen::Index n = 0; n < h.size(); ++n) {
    phases(n) = -std::arg(h(n)) - std::arg(a(n));
  }
  return ReflectPattern(std::move(phases));
}

QuadraticForms build_r1_r2(const ChannelSet& ch) {
  const double inv_amp = 1.0 / std::sqrt(ch.bs_irs_path_loss);
  const auto a_diag = ch.target_steering.asDiagonal();
  // Gr diag(a) and Gt^T diag(a).
  const ComplexMatrix rx = inv_amp * (ch.irs_to_bs * a_diag);
  const ComplexMatrix tx = inv_amp * (ch.bs_to_irs.transpose() * a_diag);
  ComplexMatrix r1 = rx.adjoint() * rx;
  ComplexMatrix r2 = tx.adjoint() * tx;
  r1 = (0.5 * (r1 + r1.adjoint())).eval();
  r2 = (0.5 * (r2 + r2.adjoint())).eval();
  return {HermitianMatrix::from_trusted(std::move(r1)), HermitianMatrix::from_trusted(std::move(r2))};
}

double sca_taylor_bound(const HermitianMatrix& v, const HermitianMatrix& v_r,
                        const HermitianMatrix& r1, const HermitianMatrix& r2) {
  const double t1_r = r1.inner(v_r);
  const double t2_r = r2.inner(v_r);
  const double t1 = r1.inner(v);
  const double t2 = r2.inner(v);
  return t1_r * t2_r + t1_r * (t2 - t2_r) + (t1 - t1_r) * t2_r;
}

P3Result maximize_quadratic(const HermitianMatrix& r, int rand_count, Rng& rng,
                            const SdpOptions& sdp) {
  const SdpSolution relaxed = solve_unit_diag_sdp(r, sdp);
  const auto score = [&r](const ComplexVector& v) { return r.quadratic_form(v); };
  const ComplexVector best = gaussian_randomization(relaxed.v, rand_count, rng, score);
  P3Result out;
  out.phases = ReflectPattern::from_coefficients(best);
  out.achieved = score(best);
  out.sdp_objective = relaxed.objective;
  out.solver_warnings = relaxed.converged ? 0 : 1;
  return out;
}

P3Result optimize_p3(const ChannelSet& ch, int rand_count, Rng& rng, const SdpOptions& sdp) {
  return maximize_quadratic(build_r1_r2(ch).r2, rand_count, rng, sdp);
}

namespace {

double product_objective(const QuadraticForms& f, const HermitianMatrix& v) {
  return f.r1.inner(v) * f.r2.inner(v);
}

struct ScaRun {
  std::vector<double> objectives;
  std::vector<bool> converged_flags;
  HermitianMatrix v;
};

ScaRun run_sca(const QuadraticForms& f, HermitianMatrix start, const ScaOptions& opts) {
  ScaRun run;
  run.v = std::move(start);
  double current = product_objective(f, run.v);
  run.objectives.push_back(current);

  for (int it = 0; it < opts.max_iter; ++it) {
    const double t1 = f.r1.inner(run.v);
    const double t2 = f.r2.inner(run.v);
    // Gradient of the Taylor bound; the constant part does not move the argmax.
    const HermitianMatrix cost = HermitianMatrix::from_trusted(t2 * f.r1.matrix() + t1 * f.r2.matrix());
    const SdpSolution sol = solve_unit_diag_sdp(cost, opts.sdp);
    run.converged_flags.push_back(sol.converged);

    // The product is bilinear in (tr(R1 V), tr(R2 V)), so along the segment
    // from V to the SDP point it is a quadratic in the step; take its maximum
    // on [0, 1]. A full step is optimal whenever both traces move the same way.
    const double d1 = f.r1.inner(sol.v) - t1;
    const double d2 = f.r2.inner(sol.v) - t2;
    const double slope = t1 * d2 + t2 * d1;
    const double curvature = d1 * d2;
    double step = 1.0;
    if (curvature < 0.0) {
      step = std::clamp(-slope / (2.0 * curvature), 0.0, 1.0);
    }
    HermitianMatrix next_v = HermitianMatrix::from_trusted(run.v.matrix() + step * (sol.v.matrix() - run.v.matrix()));
    const double next = product_objective(f, next_v);
    const double scale = std::max(std::abs(current), 1e-300);
    if (next < current) {
      if ((current - next) > opts.stall_slack * scale) {
        std::ostringstream os;
        os << "SCA objective decreased from " << current << " to " << next;
        throw ScaStalled(os.str());
      }
      break;
    }
    run.v = std::move(next_v);
    run.objectives.push_back(next);
    const double gain = (next - current) / scale;
    current = next;
    if (gain < opts.rel_improvement) {
      break;
    }
  }
  return run;
}

}  // namespace

P2Result maximize_product(const QuadraticForms& forms, const ScaOptions& opts, int rand_count,
                          Rng& rng) {
  const Eigen::Index n = forms.r1.dim();
  if (forms.r2.dim() != n) {
    throw DimensionMismatch("maximize_product: R1 and R2 differ in size");
  }
  ScaRun best = run_sca(forms, HermitianMatrix::from_trusted(ComplexMatrix::Ones(n, n)), opts);
  if (opts.random_restart) {
    const ComplexVector v0 = random_phases(static_cast<int>(n), rng).coefficients();
    ScaRun restart = run_sca(forms, HermitianMatrix::outer(v0), opts);
    if (restart.objectives.back() > best.objectives.back()) {
      // Keep the warnings from both runs.
      restart.converged_flags.insert(restart.converged_flags.begin(), best.converged_flags.begin(),
                                     best.converged_flags.end());
      best = std::move(restart);
    } else {
      best.converged_flags.insert(best.converged_flags.end(), restart.converged_flags.begin(),
                                  restart.converged_flags.end());
    }
  }

  const auto score = [&forms](const ComplexVector& v) {
    return forms.r1.quadratic_form(v) * forms.r2.quadratic_form(v);
  };
  ComplexVector chosen = gaussian_randomization(best.v, rand_count, rng, score);

  P2Result out;
  out.phases = ReflectPattern::from_coefficients(chosen);
  out.achieved = score(chosen);
  for (bool ok : best.converged_flags) {
    out.solver_warnings += ok ? 0 : 1;
  }
  out.trace.objective_per_iteration = std::move(best.objectives);
  out.trace.sdp_converged_flags = std::move(best.converged_flags);
  out.trace.final_v = std::move(best.v);
  out.trace.chosen_v = std::move(chosen);
  return out;
}

P2Result optimize_p2(const ChannelSet& ch, const ScaOptions& opts, int rand_count, Rng& rng) {
  return maximize_product(build_r1_r2(ch), opts, rand_count, rng);
}

ReflectPattern random_phases(int count, Rng& rng) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector phases(count);
  for (int k = 0; k < count; ++k) {
    // 1 - U lies in (0, 1].
    phases(k) = kTwoPi * (1.0 - unit(rng));
  }
  return ReflectPattern(std::move(phases));
}

}  // namespace irs
