// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/space.hpp"

#include <Eigen/LU>

namespace iga {

DgSpace build_space(const MultiPatchDomain& domain, ConstraintMode mode) {
  DgSpace space;
  space.domain = &domain;
  space.mode = mode;
  space.offsets.resize(domain.num_patches());
  int offset = 0;
  for (int k = 0; k < domain.num_patches(); ++k) {
    const TensorSplineSpace& s = domain.patches[k].solution_space;
    if (s.x.degree < 2 || s.y.degree < 2)
      throw ConfigError("solution spaces require degree >= 2 (patch " +
                        std::to_string(k) + ")");
    space.offsets[k] = offset;
    offset += s.dimension();
  }
  space.total_dimension = offset;
  space.constrained.assign(space.total_dimension, 0);
  if (mode == ConstraintMode::dirichlet) {
    for (const auto& [patch, edge] : domain.boundary_edges) {
      for (int local : boundary_trace_indices(domain.patches[patch].solution_space, edge))
        space.constrained[space.global_index(patch, local)] = 1;
    }
  }
  space.free_index.assign(space.total_dimension, -1);
  space.num_free = 0;
  for (int i = 0; i < space.total_dimension; ++i)
    if (!space.constrained[i]) space.free_index[i] = space.num_free++;
  return space;
}

double eval_field(const DiscreteField& field, int patch, Vec2 point, int dx,
                  int dy) {
  const DgSpace& space = *field.space;
  const ActiveTensorBasis basis =
      eval_tensor_basis(space.patch_space(patch), point, dx, dy);
  double value = 0.0;
  const int offset = space.offsets[patch];
  for (std::size_t m = 0; m < basis.indices.size(); ++m)
    value += basis.values[m] * field.coefficients[offset + basis.indices[m]];
  return value;
}

Vec2 eval_field_gradient(const DiscreteField& field, int patch, Vec2 point) {
  const Vec2 param_grad(eval_field(field, patch, point, 1, 0),
                        eval_field(field, patch, point, 0, 1));
  const Mat2 jac = field.space->domain->patches[patch].geometry.jacobian(point);
  return jac.inverse().transpose() * param_grad;
}

Mat2 eval_field_hessian(const DiscreteField& field, int patch, Vec2 point) {
  const GeometryMap& geometry = field.space->domain->patches[patch].geometry;
  const Mat2 jac = geometry.jacobian(point);
  const Mat2 inv = jac.inverse();
  const MapHessian geo_hess = geometry.hessian(point);

  Mat2 param_hess;
  param_hess(0, 0) = eval_field(field, patch, point, 2, 0);
  param_hess(0, 1) = eval_field(field, patch, point, 1, 1);
  param_hess(1, 0) = param_hess(0, 1);
  param_hess(1, 1) = eval_field(field, patch, point, 0, 2);

  const Vec2 param_grad(eval_field(field, patch, point, 1, 0),
                        eval_field(field, patch, point, 0, 1));
  const Vec2 phys_grad = inv.transpose() * param_grad;

  // H_phys = J^-T (H_param - sum_m (grad_phys)_m * Hess(G_m)) J^-1.
  Mat2 corrected = param_hess;
  for (int m = 0; m < 2; ++m) corrected -= phys_grad[m] * geo_hess.comp[m];
  return inv.transpose() * corrected * inv;
}

namespace {

// Collocation matrix B_j(g_i) at the Greville abscissae; banded and
// invertible for clamped knot vectors.
Eigen::MatrixXd collocation_matrix(const SplineSpace1d& space) {
  const std::vector<double> greville = space.greville();
  const int dim = space.dimension();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const ActiveBasis basis = eval_basis(space, greville[i], 0);
    for (int j = 0; j <= space.degree; ++j)
      mat(i, basis.first + j) = basis.values[j];
  }
  return mat;
}

}  // namespace

Eigen::VectorXd interpolate_boundary(const DgSpace& space,
                                     const PatchFunction& g) {
  if (space.mode != ConstraintMode::dirichlet)
    throw ConfigError("boundary interpolation requires dirichlet mode");
  Eigen::VectorXd values = Eigen::VectorXd::Zero(space.total_dimension);
  const MultiPatchDomain& domain = *space.domain;
  for (const auto& [patch, edge] : domain.boundary_edges) {
    const TensorSplineSpace& ts = domain.patches[patch].solution_space;
    const bool vertical = (edge == EdgeTag::xlo || edge == EdgeTag::xhi);
    const SplineSpace1d& edge_space = vertical ? ts.y : ts.x;
    const std::vector<double> greville = edge_space.greville();
    Eigen::VectorXd rhs(edge_space.dimension());
    for (int i = 0; i < edge_space.dimension(); ++i) {
      const Vec2 phys =
          domain.patches[patch].geometry.eval(edge_point(edge, greville[i]));
      rhs[i] = g(patch, phys);
    }
    const Eigen::VectorXd coeffs =
        collocation_matrix(edge_space).partialPivLu().solve(rhs);
    const std::vector<int> trace = boundary_trace_indices(ts, edge);
    for (int i = 0; i < edge_space.dimension(); ++i)
      values[space.global_index(patch, trace[i])] = coeffs[i];
  }
  return values;
}

DiscreteField interpolate_field(const DgSpace& space, const PatchFunction& f) {
  DiscreteField field;
  field.space = &space;
  field.coefficients = Eigen::VectorXd::Zero(space.total_dimension);
  const MultiPatchDomain& domain = *space.domain;
  for (int k = 0; k < domain.num_patches(); ++k) {
    const TensorSplineSpace& ts = domain.patches[k].solution_space;
    const std::vector<double> gx = ts.x.greville();
    const std::vector<double> gy = ts.y.greville();
    const int dim_x = ts.x.dimension();
    const int dim_y = ts.y.dimension();

    Eigen::MatrixXd values(dim_x, dim_y);
    for (int i = 0; i < dim_x; ++i)
      for (int j = 0; j < dim_y; ++j)
        values(i, j) =
            f(k, domain.patches[k].geometry.eval(Vec2(gx[i], gy[j])));

    // Tensor collocation: solve along x for every y-line, then along y.
    const auto lu_x = collocation_matrix(ts.x).partialPivLu();
    const auto lu_y = collocation_matrix(ts.y).partialPivLu();
    Eigen::MatrixXd cx(dim_x, dim_y);
    for (int j = 0; j < dim_y; ++j) cx.col(j) = lu_x.solve(values.col(j));
    Eigen::MatrixXd coeffs(dim_x, dim_y);
    for (int i = 0; i < dim_x; ++i)
      coeffs.row(i) = lu_y.solve(cx.row(i).transpose()).transpose();

    for (int j = 0; j < dim_y; ++j)
      for (int i = 0; i < dim_x; ++i)
        field.coefficients[space.global_index(k, ts.flat_index(i, j))] =
            coeffs(i, j);
  }
  return field;
}

}  // namespace iga
