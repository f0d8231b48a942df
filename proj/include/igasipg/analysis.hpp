// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Cholesky>

#include "igasipg/assembly.hpp"

namespace iga {

/// Error norms of u_h - u. The dG-norm satisfies
/// qh^2 = broken_h1_alpha^2 + jump_penalty^2 and
/// qh_plus^2 = qh^2 + (h/sigma)^2 * broken_h2_alpha^2.
struct ErrorReport {
  double broken_h1_alpha = 0.0;
  double jump_penalty = 0.0;
  double qh = 0.0;
  double qh_plus = 0.0;
  double broken_h2_alpha = 0.0;
  double l2 = 0.0;
};

ErrorReport error_vs_exact(const MultiPatchDomain& domain, const DgSpace& space,
                           const SipgParameters& params,
                           const DiscreteField& field,
                           const ExactSolution& exact, int extra_quad = 3);

/// A scalar function of one variable with its derivative.
struct Function1d {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// H^1_D(0,1)-orthogonal projector onto a univariate spline space, where
/// (u,v)_{H^1_D} = (u',v')_{L2} + u(0) v(0). The projection interpolates both
/// endpoint values; here this is built in by solving the equivalent
/// endpoint-constrained H^1-seminorm minimization (the two formulations agree
/// because the projector is interpolatory at 0 and 1). Integrals use per-span
/// Gauss rules with p+3 points.
class Projector1d {
 public:
  explicit Projector1d(SplineSpace1d space);

  const SplineSpace1d& space() const { return space_; }
  /// All quadrature nodes, spans concatenated in order.
  const std::vector<double>& quadrature_nodes() const { return nodes_; }
  const std::vector<double>& quadrature_weights() const { return weights_; }

  std::vector<double> project(const Function1d& u) const;
  /// Projection from samples of u' at the quadrature nodes plus the endpoint
  /// values of u (the constrained coefficients).
  std::vector<double> project_sampled(const std::vector<double>& du_at_nodes,
                                      double u_at_0, double u_at_1) const;

 private:
  SplineSpace1d space_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  // Derivatives of all basis functions at every node (node-major).
  Eigen::MatrixXd basis_derivs_;
  Eigen::LDLT<Eigen::MatrixXd> interior_gram_;
};

std::vector<double> project_1d(const Projector1d& projector,
                               const Function1d& u);

/// A function on the parameter square with derivatives up to second order.
struct Function2d {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<Mat2(Vec2)> hessian;  // only the mixed entry is required
};

/// Tensorized projector: univariate H^1_D projection along x fibers, then
/// along y fibers. Returns tensor coefficients, flat index j * dim_x + i.
Eigen::VectorXd project_patch(const TensorSplineSpace& space,
                              const Function2d& u);

/// Pull a physical-domain exact solution back to the parameter square of one
/// patch (value, gradient and Hessian by the chain rule).
Function2d pullback(const ExactSolution& exact, const GeometryMap& geometry,
                    int patch);

/// r_l = e_{l-1} / e_l; requires at least two positive entries.
std::vector<double> convergence_rates(const std::vector<double>& errors);

}  // namespace iga
