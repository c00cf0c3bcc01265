// SPDX-License-Identifier: Apache-2.0
//
// ADMM solver for the unit-diagonal complex SDP
//
//   maximize tr(C V)  subject to  V >= 0,  V_nn = 1.
#pragma once

#include <optional>
#include <vector>

#include "irs/linalg.hpp"

namespace irs {

struct SdpOptions {
  double rho = 1.0;
  double tol = 1e-6;
  int max_iter = 5000;
  bool adapt_rho = true;
  /// Iterations between residual-balancing checks.
  int adapt_interval = 50;
  /// Seed ADMM from a low-rank block-coordinate ascent when no warm start
  /// is supplied. ADMM still decides convergence.
  bool low_rank_start = true;
  int low_rank_sweeps = 2000;
};

/// ADMM state that can seed a later solve with a nearby cost matrix.
struct SdpWarmStart {
  ComplexMatrix z;     // unit-diagonal iterate
  ComplexMatrix dual;  // scaled dual U
  double rho = 1.0;
};

struct SdpSolution {
  HermitianMatrix v;
  double objective = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // ||V - Z||_F per iteration
  SdpWarmStart state;
};

/// Block-coordinate ascent on V = Y Y^H with unit-norm rows of Y (p columns),
/// followed by the diagonal dual that makes (Y Y^H, D / rho) an ADMM fixed
/// point when Y is optimal. Deterministic for a given C.
SdpWarmStart low_rank_start(const ComplexMatrix& cost, double rho, int sweeps);

/// Never throws on slow convergence; inspect `converged`.
///
/// The returned V is exactly unit-diagonal and PSD: the PSD-side iterate is
/// rescaled by its diagonal, falling back to the diagonal-side iterate if a
/// diagonal entry of the PSD iterate has collapsed.
SdpSolution solve_unit_diag_sdp(const HermitianMatrix& c, const SdpOptions& opts = {},
                                const SdpWarmStart* warm = nullptr);

}  // namespace irs
