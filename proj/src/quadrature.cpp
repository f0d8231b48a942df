// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace iga {

namespace {

// Legendre polynomial P_n and its derivative at x via the three-term
// recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule1d gauss_rule(int n) {
  if (n < 1) throw DomainError("Gauss rule needs at least one point");
  QuadratureRule1d rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.5;
    rule.weights[0] = 1.0;
    return rule;
  }
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n, starting from the Chebyshev-based guess.
    double x = std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * n + 2.0));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 0.5 * w;
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return rule.nodes[a] < rule.nodes[b];
  });
  QuadratureRule1d sorted;
  sorted.nodes.resize(n);
  sorted.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    sorted.nodes[i] = rule.nodes[order[i]];
    sorted.weights[i] = rule.weights[order[i]];
  }
  return sorted;
}

ElementRule element_rule(const TensorSplineSpace& space, int extra_points) {
  if (extra_points < 0) throw DomainError("extra quadrature points must be >= 0");
  ElementRule rule;
  rule.reference_x = gauss_rule(space.x.degree + 1 + extra_points);
  rule.reference_y = gauss_rule(space.y.degree + 1 + extra_points);
  const double hx = space.x.grid_size();
  const double hy = space.y.grid_size();
  rule.cells.reserve(space.x.num_intervals * space.y.num_intervals);
  for (int cy = 0; cy < space.y.num_intervals; ++cy) {
    for (int cx = 0; cx < space.x.num_intervals; ++cx) {
      ElementRule::Cell c;
      c.cell_x = cx;
      c.cell_y = cy;
      c.x0 = cx * hx;
      c.x1 = (cx + 1) * hx;
      c.y0 = cy * hy;
      c.y1 = (cy + 1) * hy;
      rule.cells.push_back(c);
    }
  }
  return rule;
}

InterfaceRule interface_rule(const SplineSpace1d& side_k,
                             const SplineSpace1d& side_l,
                             Orientation orientation, int extra_points) {
  if (extra_points < 0) throw DomainError("extra quadrature points must be >= 0");
  std::set<double> breaks;
  for (int i = 0; i <= side_k.num_intervals; ++i)
    breaks.insert(static_cast<double>(i) / side_k.num_intervals);
  for (int i = 0; i <= side_l.num_intervals; ++i) {
    const double t = static_cast<double>(i) / side_l.num_intervals;
    breaks.insert(orientation == Orientation::same ? t : 1.0 - t);
  }
  if (breaks.size() < 2) throw InternalError("empty interface knot union");

  const int points =
      (side_k.degree + side_l.degree + 2 + 1) / 2 + extra_points;
  const QuadratureRule1d reference = gauss_rule(points);

  InterfaceRule rule;
  double prev = *breaks.begin();
  for (auto it = std::next(breaks.begin()); it != breaks.end(); ++it) {
    const double next = *it;
    const double len = next - prev;
    if (len >= 1e-14) {  // merge numerically coincident break points
      InterfaceRule::Segment seg;
      seg.t0 = prev;
      seg.t1 = next;
      seg.nodes.resize(points);
      seg.weights.resize(points);
      for (int q = 0; q < points; ++q) {
        seg.nodes[q] = seg.t0 + len * reference.nodes[q];
        seg.weights[q] = len * reference.weights[q];
      }
      rule.segments.push_back(std::move(seg));
    }
    prev = next;
  }
  return rule;
}

}  // namespace iga
