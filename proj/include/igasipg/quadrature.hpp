// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "igasipg/splines.hpp"

namespace iga {

/// Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
struct QuadratureRule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1.
QuadratureRule1d gauss_rule(int n);

/// Per-cell tensor Gauss rules over the knot-span grid of a tensor spline
/// space: p+1 (+extra) points per direction on every span, exact for
/// degree 2p+1 (+2*extra) integrands per direction.
struct ElementRule {
  struct Cell {
    int cell_x = 0, cell_y = 0;   // knot-span indices
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // parameter bounds
  };
  std::vector<Cell> cells;          // row-major: cy * n_x + cx
  QuadratureRule1d reference_x;     // on [0,1], mapped per cell
  QuadratureRule1d reference_y;

  int points_per_cell() const {
    return reference_x.size() * reference_y.size();
  }
  /// Parameter point and weight (already scaled by the cell area) of local
  /// point (qx, qy) in a given cell.
  Vec2 point(const Cell& c, int qx, int qy) const {
    return {c.x0 + (c.x1 - c.x0) * reference_x.nodes[qx],
            c.y0 + (c.y1 - c.y0) * reference_y.nodes[qy]};
  }
  double weight(const Cell& c, int qx, int qy) const {
    return (c.x1 - c.x0) * (c.y1 - c.y0) * reference_x.weights[qx] *
           reference_y.weights[qy];
  }
};

ElementRule element_rule(const TensorSplineSpace& space, int extra_points = 0);

/// Quadrature along a shared interface in the common edge parameter
/// t in (0,1) of the side-k parameterization. Segment endpoints contain the
/// knot images of both adjoining edge spaces, so products of traces from the
/// two sides are piecewise polynomial on every segment.
struct InterfaceRule {
  struct Segment {
    double t0 = 0, t1 = 0;
    std::vector<double> nodes;    // in (t0, t1)
    std::vector<double> weights;  // scaled by segment length
  };
  std::vector<Segment> segments;
};

/// side_k / side_l: the univariate spaces living along the edge, given in the
/// common parameterization; orientation maps side-l knots through t -> 1-t.
/// Per segment, ceil((p_k + p_l + 2)/2) + extra_points Gauss points.
InterfaceRule interface_rule(const SplineSpace1d& side_k,
                             const SplineSpace1d& side_l,
                             Orientation orientation, int extra_points = 0);

}  // namespace iga
