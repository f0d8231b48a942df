// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/geometry.hpp"

#include <cmath>
#include <limits>

namespace iga {

Vec2 edge_point(EdgeTag edge, double t) {
  switch (edge) {
    case EdgeTag::xlo:
      return {0.0, t};
    case EdgeTag::xhi:
      return {1.0, t};
    case EdgeTag::ylo:
      return {t, 0.0};
    case EdgeTag::yhi:
      return {t, 1.0};
  }
  throw InternalError("invalid edge tag");
}

Vec2 edge_reference_normal(EdgeTag edge) {
  switch (edge) {
    case EdgeTag::xlo:
      return {-1.0, 0.0};
    case EdgeTag::xhi:
      return {1.0, 0.0};
    case EdgeTag::ylo:
      return {0.0, -1.0};
    case EdgeTag::yhi:
      return {0.0, 1.0};
  }
  throw InternalError("invalid edge tag");
}

namespace {

Vec2 eval_derivative(const GeometryMap& map, Vec2 point, int dx, int dy) {
  const ActiveTensorBasis basis =
      eval_tensor_basis(map.space, point, dx, dy);
  Vec2 result = Vec2::Zero();
  for (std::size_t k = 0; k < basis.indices.size(); ++k)
    result += basis.values[k] * map.control_points[basis.indices[k]];
  return result;
}

}  // namespace

Vec2 GeometryMap::eval(Vec2 point) const {
  return eval_derivative(*this, point, 0, 0);
}

Mat2 GeometryMap::jacobian(Vec2 point) const {
  const Vec2 gx = eval_derivative(*this, point, 1, 0);
  const Vec2 gy = eval_derivative(*this, point, 0, 1);
  Mat2 j;
  j.col(0) = gx;
  j.col(1) = gy;
  return j;
}

MapHessian GeometryMap::hessian(Vec2 point) const {
  const Vec2 gxx = eval_derivative(*this, point, 2, 0);
  const Vec2 gxy = eval_derivative(*this, point, 1, 1);
  const Vec2 gyy = eval_derivative(*this, point, 0, 2);
  MapHessian h;
  for (int m = 0; m < 2; ++m) {
    h.comp[m](0, 0) = gxx[m];
    h.comp[m](0, 1) = gxy[m];
    h.comp[m](1, 0) = gxy[m];
    h.comp[m](1, 1) = gyy[m];
  }
  return h;
}

GeometryMap GeometryMap::bilinear(Vec2 c00, Vec2 c10, Vec2 c01, Vec2 c11) {
  GeometryMap map;
  map.space = TensorSplineSpace::uniform(1, 1);
  map.control_points = {c00, c10, c01, c11};
  return map;
}

GeometryMap GeometryMap::rectangle(double x0, double x1, double y0,
                                   double y1) {
  return bilinear({x0, y0}, {x1, y0}, {x0, y1}, {x1, y1});
}

Vec2 edge_normal(const GeometryMap& map, EdgeTag edge, double t) {
  const Vec2 point = edge_point(edge, t);
  const Mat2 jac = map.jacobian(point);
  const double det = jac.determinant();
  // Tangent along the edge; its norm is the arc-length measure.
  const bool vertical = (edge == EdgeTag::xlo || edge == EdgeTag::xhi);
  const Vec2 tangent = vertical ? Vec2(jac.col(1)) : Vec2(jac.col(0));
  if (tangent.norm() < 1e-12)
    throw GeometryError("degenerate edge tangent at t = " + std::to_string(t));
  if (std::abs(det) < 1e-14)
    throw GeometryError("singular Jacobian on edge at t = " + std::to_string(t));
  const Vec2 ref = edge_reference_normal(edge);
  Vec2 n = jac.inverse().transpose() * ref;
  n.normalize();
  return n;
}

Vec2 invert_point(const GeometryMap& map, Vec2 physical,
                  std::optional<Vec2> initial_guess) {
  Vec2 q;
  if (initial_guess) {
    q = *initial_guess;
  } else {
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Vec2 candidate(i / 4.0, j / 4.0);
        const double dist = (map.eval(candidate) - physical).norm();
        if (dist < best) {
          best = dist;
          q = candidate;
        }
      }
    }
  }
  q = q.cwiseMax(0.0).cwiseMin(1.0);
  double residual = (map.eval(q) - physical).norm();
  for (int it = 0; it < 50; ++it) {
    if (residual <= 1e-12) return q;
    const Mat2 jac = map.jacobian(q);
    if (std::abs(jac.determinant()) < 1e-14)
      throw GeometryError("point inversion hit a singular Jacobian");
    const Vec2 step = jac.partialPivLu().solve(physical - map.eval(q));
    double damping = 1.0;
    for (int half = 0; half < 30; ++half) {
      Vec2 trial = (q + damping * step).cwiseMax(0.0).cwiseMin(1.0);
      const double trial_residual = (map.eval(trial) - physical).norm();
      if (trial_residual < residual || damping < 1e-6) {
        q = trial;
        residual = trial_residual;
        break;
      }
      damping *= 0.5;
    }
  }
  if (residual <= 1e-12) return q;
  throw GeometryError("point inversion did not converge (residual " +
                      std::to_string(residual) + ")");
}

GeometryRegularity estimate_regularity(const GeometryMap& map,
                                       int samples_per_direction) {
  if (samples_per_direction < 10)
    throw DomainError("regularity sampling needs at least 10 points per direction");
  GeometryRegularity reg;
  const int n = samples_per_direction;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 q(i / (n - 1.0), j / (n - 1.0));
      const Mat2 jac = map.jacobian(q);
      const double det = jac.determinant();
      if (det <= 1e-10)
        throw GeometryError("geometry map rejected: det(grad G) = " +
                            std::to_string(det) + " at (" +
                            std::to_string(q.x()) + ", " +
                            std::to_string(q.y()) + ")");
      const double grad_norm = jac.jacobiSvd().singularValues()(0);
      const Mat2 inv = jac.inverse();
      const double inv_norm = inv.jacobiSvd().singularValues()(0);
      const MapHessian hess = map.hessian(q);
      const double hess_norm = std::sqrt(hess.comp[0].squaredNorm() +
                                         hess.comp[1].squaredNorm());
      reg.sup_grad = std::max({reg.sup_grad, grad_norm, hess_norm});
      reg.sup_inv_grad = std::max(reg.sup_inv_grad, inv_norm);
    }
  }
  return reg;
}

}  // namespace iga
