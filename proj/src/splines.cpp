// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/splines.hpp"

#include <algorithm>
#include <cmath>

namespace iga {

std::string to_string(EdgeTag edge) {
  switch (edge) {
    case EdgeTag::xlo:
      return "x=0";
    case EdgeTag::xhi:
      return "x=1";
    case EdgeTag::ylo:
      return "y=0";
    case EdgeTag::yhi:
      return "y=1";
  }
  throw InternalError("invalid edge tag");
}

EdgeTag edge_from_string(const std::string& name) {
  for (EdgeTag e : all_edges) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown edge tag '" + name + "' (expected x=0, x=1, y=0, y=1)");
}

SplineSpace1d SplineSpace1d::uniform(int degree, int num_intervals) {
  if (degree < 1) throw ConfigError("spline degree must be >= 1");
  if (num_intervals < 1) throw ConfigError("number of knot spans must be >= 1");
  SplineSpace1d s;
  s.degree = degree;
  s.num_intervals = num_intervals;
  s.knots.resize(num_intervals + 2 * degree + 1);
  const double h = 1.0 / num_intervals;
  for (int i = 0; i < degree + 1; ++i) s.knots[i] = 0.0;
  for (int i = 1; i < num_intervals; ++i) s.knots[degree + i] = i * h;
  for (int i = 0; i < degree + 1; ++i) s.knots[degree + num_intervals + i] = 1.0;
  return s;
}

int SplineSpace1d::span_of(double t) const {
  if (t < 0.0 || t > 1.0) throw DomainError("parameter outside [0,1]");
  // Left-half-open spans (i*h, (i+1)*h]; t = 0 falls into the first span.
  int cell = static_cast<int>(std::ceil(t * num_intervals)) - 1;
  return std::clamp(cell, 0, num_intervals - 1);
}

std::vector<double> SplineSpace1d::greville() const {
  std::vector<double> g(dimension());
  for (int i = 0; i < dimension(); ++i) {
    double sum = 0.0;
    for (int j = 1; j <= degree; ++j) sum += knots[i + j];
    g[i] = sum / degree;
  }
  return g;
}

namespace {

// Basis functions and derivatives on one span, following the standard
// knot-insertion recurrences (Piegl & Tiller, algorithm A2.3). `span` is the
// index into the knot array with knots[span] <= t <= knots[span+1].
void ders_basis_funs(const std::vector<double>& U, int span, double t, int p,
                     int max_order, std::vector<std::vector<double>>& ders) {
  std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1));
  std::vector<double> left(p + 1), right(p + 1);
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - U[span + 1 - j];
    right[j] = U[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  ders.assign(max_order + 1, std::vector<double>(p + 1, 0.0));
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  std::vector<std::vector<double>> a(2, std::vector<double>(p + 1));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= max_order; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= max_order; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
}

}  // namespace

ActiveBasis eval_basis(const SplineSpace1d& space, double t, int deriv_order) {
  if (t < 0.0 || t > 1.0) throw DomainError("parameter outside [0,1]");
  if (deriv_order < 0 || deriv_order > 2)
    throw DomainError("derivative order must be 0, 1 or 2");
  const int p = space.degree;
  ActiveBasis out;
  out.values.assign(p + 1, 0.0);
  const int cell = space.span_of(t);
  out.first = cell;  // first active basis index equals the cell index
  if (deriv_order > p) return out;  // derivative of lower-degree pieces
  const int span = cell + p;        // index into the knot array
  std::vector<std::vector<double>> ders;
  ders_basis_funs(space.knots, span, t, p, deriv_order, ders);
  out.values = ders[deriv_order];
  return out;
}

std::vector<double> eval_basis_dense(const SplineSpace1d& space, double t,
                                     int deriv_order) {
  std::vector<double> dense(space.dimension(), 0.0);
  const ActiveBasis active = eval_basis(space, t, deriv_order);
  for (int j = 0; j <= space.degree; ++j)
    dense[active.first + j] = active.values[j];
  return dense;
}

ActiveTensorBasis eval_tensor_basis(const TensorSplineSpace& space, Vec2 point,
                                    int dx, int dy) {
  if (point.x() < 0.0 || point.x() > 1.0 || point.y() < 0.0 || point.y() > 1.0)
    throw DomainError("point outside the parameter square");
  const ActiveBasis bx = eval_basis(space.x, point.x(), dx);
  const ActiveBasis by = eval_basis(space.y, point.y(), dy);
  ActiveTensorBasis out;
  const int nx = space.x.degree + 1;
  const int ny = space.y.degree + 1;
  out.indices.resize(nx * ny);
  out.values.resize(nx * ny);
  int k = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i, ++k) {
      out.indices[k] = space.flat_index(bx.first + i, by.first + j);
      out.values[k] = bx.values[i] * by.values[j];
    }
  }
  return out;
}

std::vector<int> boundary_trace_indices(const TensorSplineSpace& space,
                                        EdgeTag edge) {
  const int dim_x = space.x.dimension();
  const int dim_y = space.y.dimension();
  std::vector<int> indices;
  switch (edge) {
    case EdgeTag::xlo:
      for (int j = 0; j < dim_y; ++j) indices.push_back(space.flat_index(0, j));
      break;
    case EdgeTag::xhi:
      for (int j = 0; j < dim_y; ++j)
        indices.push_back(space.flat_index(dim_x - 1, j));
      break;
    case EdgeTag::ylo:
      for (int i = 0; i < dim_x; ++i) indices.push_back(space.flat_index(i, 0));
      break;
    case EdgeTag::yhi:
      for (int i = 0; i < dim_x; ++i)
        indices.push_back(space.flat_index(i, dim_y - 1));
      break;
  }
  return indices;
}

}  // namespace iga
