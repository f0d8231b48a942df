// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "igasipg/common.hpp"

namespace iga {

/// Univariate B-spline space of degree p on a uniform open knot vector over
/// [0,1] with n knot spans. Interior knots are simple, so the basis has
/// maximum smoothness C^{p-1}. Dimension is n + p.
struct SplineSpace1d {
  int degree = 1;
  int num_intervals = 1;
  std::vector<double> knots;  // length n + 2p + 1, clamped

  static SplineSpace1d uniform(int degree, int num_intervals);

  int dimension() const { return num_intervals + degree; }
  double grid_size() const { return 1.0 / num_intervals; }

  /// Knot span containing t under the left-half-open convention: span i
  /// covers (i*h, (i+1)*h], and t = 0 belongs to the first span.
  int span_of(double t) const;

  /// Greville abscissae (knot averages), the collocation points used for
  /// boundary-data interpolation. First/last coincide with 0 and 1.
  std::vector<double> greville() const;
};

/// The p+1 basis functions (or derivatives) that are nonzero on one knot
/// span: values[j] belongs to global basis index first + j.
struct ActiveBasis {
  int first = 0;
  std::vector<double> values;
};

/// Evaluate the active B-spline basis functions at t, or their derivative of
/// order deriv_order (0..2). Orders above the degree evaluate to zero.
ActiveBasis eval_basis(const SplineSpace1d& space, double t, int deriv_order);

/// Evaluate all basis functions / derivatives at once (dense, for small
/// spaces and collocation matrices).
std::vector<double> eval_basis_dense(const SplineSpace1d& space, double t,
                                     int deriv_order);

/// Tensor product of two univariate spaces on the parameter square. Basis
/// index (i,j) maps to flat index j * dim_x + i (row-major in x).
struct TensorSplineSpace {
  SplineSpace1d x;
  SplineSpace1d y;

  static TensorSplineSpace uniform(int degree, int num_intervals) {
    return {SplineSpace1d::uniform(degree, num_intervals),
            SplineSpace1d::uniform(degree, num_intervals)};
  }

  int dimension() const { return x.dimension() * y.dimension(); }
  int flat_index(int i, int j) const { return j * x.dimension() + i; }
};

/// Active tensor-product basis values at one parameter point:
/// (p_x+1)(p_y+1) entries, value k belongs to flat index indices[k].
struct ActiveTensorBasis {
  std::vector<int> indices;
  std::vector<double> values;
};

/// value(i,j) = D^{dx} B_i(point.x) * D^{dy} B_j(point.y).
ActiveTensorBasis eval_tensor_basis(const TensorSplineSpace& space, Vec2 point,
                                    int dx, int dy);

/// Flat indices of the boundary layer of coefficients along one edge of the
/// parameter square. The trace of a tensor spline on that edge is the
/// univariate spline in the other direction with exactly these coefficients.
std::vector<int> boundary_trace_indices(const TensorSplineSpace& space,
                                        EdgeTag edge);

}  // namespace iga
