// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "igasipg/splines.hpp"

namespace iga {

/// Parameter point of the curve gamma(t) tracing an edge of the parameter
/// square: (t, s) for horizontal edges, (s, t) for vertical ones.
Vec2 edge_point(EdgeTag edge, double t);

/// Reference outward normal of an edge of the parameter square.
Vec2 edge_reference_normal(EdgeTag edge);

/// Tensor B-spline patch geometry: a map from the parameter square onto one
/// patch of the physical domain. Control points are stored row-major in x,
/// one per tensor basis function.
struct GeometryMap {
  TensorSplineSpace space;
  std::vector<Vec2> control_points;

  Vec2 eval(Vec2 point) const;
  Mat2 jacobian(Vec2 point) const;
  MapHessian hessian(Vec2 point) const;

  /// Bilinear patch through four corners (degree 1, one span per direction).
  static GeometryMap bilinear(Vec2 c00, Vec2 c10, Vec2 c01, Vec2 c11);
  /// Axis-aligned rectangle [x0,x1] x [y0,y1].
  static GeometryMap rectangle(double x0, double x1, double y0, double y1);
};

/// Unit outward normal of the patch at the image of edge point gamma(t).
Vec2 edge_normal(const GeometryMap& map, EdgeTag edge, double t);

/// Damped Newton inversion of the geometry map, clamped to the parameter
/// square. Without an initial guess, the best point of a 5x5 sample grid is
/// used. Throws GeometryError after 50 iterations without convergence.
Vec2 invert_point(const GeometryMap& map, Vec2 physical,
                  std::optional<Vec2> initial_guess = std::nullopt);

/// Sampled bounds on the map derivatives: sup over the sample grid of the
/// spectral norm of grad G and the Frobenius norm of the second derivatives
/// (sup_grad takes the larger of the two), and of |(grad G)^-1|.
struct GeometryRegularity {
  double sup_grad = 0.0;
  double sup_inv_grad = 0.0;
};

/// Throws GeometryError if det(grad G) <= 1e-10 anywhere on the sample grid.
GeometryRegularity estimate_regularity(const GeometryMap& map,
                                       int samples_per_direction = 20);

}  // namespace iga
