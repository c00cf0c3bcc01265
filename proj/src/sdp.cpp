// SPDX-License-Identifier: Apache-2.0
#include "irs/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irs/errors.hpp"

namespace irs {

namespace {

void set_unit_diagonal(ComplexMatrix& m) { m.diagonal().setOnes(); }

void hermitize(ComplexMatrix& m) {
  m = (0.5 * (m + m.adjoint())).eval();
}

/// D^{-1/2} V D^{-1/2}; keeps PSD and forces a unit diagonal.
std::optional<ComplexMatrix> diagonal_rescale(const ComplexMatrix& v) {
  const Eigen::Index n = v.rows();
  RealVector inv_sqrt(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = v(k, k).real();
    if (!(d > 1e-12)) {
      return std::nullopt;
    }
    inv_sqrt(k) = 1.0 / std::sqrt(d);
  }
  ComplexMatrix out = inv_sqrt.asDiagonal() * v * inv_sqrt.asDiagonal();
  hermitize(out);
  set_unit_diagonal(out);
  return out;
}

}  // namespace

SdpWarmStart low_rank_start(const ComplexMatrix& cost, double rho, int sweeps) {
  const Eigen::Index n = cost.rows();
  // Complex Burer-Monteiro: p^2 > n keeps spurious local maxima away.
  const Eigen::Index p =
      std::min<Eigen::Index>(n, static_cast<Eigen::Index>(std::ceil(std::sqrt(2.0 * n))) + 1);
  Rng rng(0x5eedULL + static_cast<std::uint64_t>(n));
  ComplexMatrix y(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < p; ++k) {
      y(i, k) = standard_cn(rng);
    }
    y.row(i).normalize();
  }

  // Row i of V = Y Y^H only enters tr(C V) through Re <y_i, sum_{j != i} C_ij y_j>.
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double largest_move = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::RowVectorXcd g = cost.row(i) * y - cost(i, i) * y.row(i);
      const double norm = g.norm();
      if (norm > 0.0) {
        g /= norm;
        largest_move = std::max(largest_move, (g - y.row(i)).squaredNorm());
        y.row(i) = g;
      }
    }
    if (largest_move < 1e-16) {
      break;
    }
  }

  const ComplexMatrix cy = cost * y;
  RealVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i) = cy.row(i).dot(y.row(i)).real();  // y_i^H-weighted row of C Y
  }
  ComplexMatrix z = y * y.adjoint();
  hermitize(z);
  set_unit_diagonal(z);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  u.diagonal() = (d / rho).cast<Complex>();
  return {std::move(z), std::move(u), rho};
}

SdpSolution solve_unit_diag_sdp(const HermitianMatrix& c, const SdpOptions& opts,
                                const SdpWarmStart* warm) {
  const Eigen::Index n = c.dim();
  if (n < 1) {
    throw DimensionMismatch("SDP needs a cost matrix of dimension >= 1");
  }
  if (warm != nullptr && (warm->z.rows() != n || warm->dual.rows() != n)) {
    throw DimensionMismatch("SDP warm start has the wrong dimension");
  }

  // Solve with a cost normalized to ||C||_F = N; the argmax is unchanged and
  // rho then has a scale comparable to the iterates.
  const double c_norm = c.frobenius_norm();
  const double c_scale = c_norm > 0.0 ? static_cast<double>(n) / c_norm : 1.0;
  const ComplexMatrix cost = c_scale * c.matrix();

  ComplexMatrix z;
  ComplexMatrix u;
  double rho = opts.rho;
  if (warm != nullptr) {
    z = warm->z;
    u = warm->dual;
    rho = warm->rho;
  } else if (opts.low_rank_start) {
    SdpWarmStart start = low_rank_start(cost, rho, opts.low_rank_sweeps);
    z = std::move(start.z);
    u = std::move(start.dual);
  } else {
    z = ComplexMatrix::Identity(n, n);
    u = ComplexMatrix::Zero(n, n);
  }

  SdpSolution sol;
  sol.residual_history.reserve(static_cast<std::size_t>(std::min(opts.max_iter, 10000)));
  ComplexMatrix v = z;
  ComplexMatrix z_prev;
  double primal = 0.0;
  int it = 0;
  bool converged = false;
  while (it < opts.max_iter) {
    ++it;
    ComplexMatrix target = z - u + cost / rho;
    hermitize(target);
    v = detail::psd_project_raw(target);
    hermitize(v);

    z_prev = z;
    z = v + u;
    set_unit_diagonal(z);

    u += v - z;

    primal = (v - z).norm();
    const double dual = rho * (z - z_prev).norm();
    sol.residual_history.push_back(primal);
    if (std::max(primal, dual) <= opts.tol * std::max(1.0, v.norm())) {
      converged = true;
      break;
    }
    if (opts.adapt_rho && opts.adapt_interval > 0 && it % opts.adapt_interval == 0) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }

  std::optional<ComplexMatrix> rescaled = diagonal_rescale(v);
  ComplexMatrix out = rescaled ? std::move(*rescaled) : z;
  if (!rescaled) {
    hermitize(out);
    set_unit_diagonal(out);
  }
  sol.v = HermitianMatrix::from_trusted(std::move(out));
  sol.objective = c.inner(sol.v);
  sol.primal_residual = primal;
  sol.iterations = it;
  sol.converged = converged;
  sol.state = SdpWarmStart{z, u, rho};
  return sol;
}

}  // namespace irs
