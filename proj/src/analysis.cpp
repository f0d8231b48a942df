// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/analysis.hpp"

#include <cmath>

#include "igasipg/quadrature.hpp"

namespace iga {

ErrorReport error_vs_exact(const MultiPatchDomain& domain, const DgSpace& space,
                           const SipgParameters& params,
                           const DiscreteField& field,
                           const ExactSolution& exact, int extra_quad) {
  ErrorReport report;
  double l2_sq = 0.0, h1_sq = 0.0, h2_sq = 0.0, pen_sq = 0.0;

  for (int k = 0; k < domain.num_patches(); ++k) {
    const double alpha = domain.patches[k].alpha;
    const GeometryMap& geometry = domain.patches[k].geometry;
    const ElementRule rule = element_rule(space.patch_space(k), extra_quad);
    for (const ElementRule::Cell& cell : rule.cells) {
      for (int qy = 0; qy < rule.reference_y.size(); ++qy) {
        for (int qx = 0; qx < rule.reference_x.size(); ++qx) {
          const Vec2 xi = rule.point(cell, qx, qy);
          const Vec2 phys = geometry.eval(xi);
          const double det = geometry.jacobian(xi).determinant();
          const double w = rule.weight(cell, qx, qy) * det;

          const double e_val =
              eval_field(field, k, xi) - exact.value(k, phys);
          const Vec2 e_grad =
              eval_field_gradient(field, k, xi) - exact.gradient(k, phys);
          const Mat2 e_hess =
              eval_field_hessian(field, k, xi) - exact.hessian(k, phys);

          l2_sq += w * e_val * e_val;
          h1_sq += alpha * w * e_grad.squaredNorm();
          h2_sq += alpha * w * e_hess.squaredNorm();
        }
      }
    }
  }

  const double h = global_mesh_quantities(domain).h_max;
  for (const Interface& face : domain.interfaces) {
    const TensorSplineSpace& ts_k = space.patch_space(face.k);
    const TensorSplineSpace& ts_l = space.patch_space(face.l);
    const bool vertical_k =
        (face.edge_k == EdgeTag::xlo || face.edge_k == EdgeTag::xhi);
    const SplineSpace1d& edge_k = vertical_k ? ts_k.y : ts_k.x;
    const bool vertical_l =
        (face.edge_l == EdgeTag::xlo || face.edge_l == EdgeTag::xhi);
    const SplineSpace1d& edge_l = vertical_l ? ts_l.y : ts_l.x;
    const InterfaceRule rule =
        interface_rule(edge_k, edge_l, face.orientation, extra_quad);
    const GeometryMap& geo_k = domain.patches[face.k].geometry;
    const double factor = params.sigma / h * alpha_max(domain, face);

    for (const InterfaceRule::Segment& segment : rule.segments) {
      for (std::size_t q = 0; q < segment.nodes.size(); ++q) {
        const double t = segment.nodes[q];
        const double t_l =
            face.orientation == Orientation::same ? t : 1.0 - t;
        const Vec2 xi_k = edge_point(face.edge_k, t);
        const Vec2 xi_l = edge_point(face.edge_l, t_l);
        const Vec2 phys = geo_k.eval(xi_k);
        const Mat2 jac_k = geo_k.jacobian(xi_k);
        const Vec2 tangent =
            vertical_k ? Vec2(jac_k.col(1)) : Vec2(jac_k.col(0));
        const double w = segment.weights[q] * tangent.norm();

        const double e_k =
            eval_field(field, face.k, xi_k) - exact.value(face.k, phys);
        const double e_l =
            eval_field(field, face.l, xi_l) - exact.value(face.l, phys);
        const double jump = e_k - e_l;
        pen_sq += factor * w * jump * jump;
      }
    }
  }

  report.l2 = std::sqrt(l2_sq);
  report.broken_h1_alpha = std::sqrt(h1_sq);
  report.broken_h2_alpha = std::sqrt(h2_sq);
  report.jump_penalty = std::sqrt(pen_sq);
  report.qh = std::sqrt(h1_sq + pen_sq);
  const double hs = h / params.sigma;
  report.qh_plus = std::sqrt(h1_sq + pen_sq + hs * hs * h2_sq);
  return report;
}

// ---------------------------------------------------------------------------
// Projectors

Projector1d::Projector1d(SplineSpace1d space) : space_(std::move(space)) {
  if (space_.dimension() < 3)
    throw ConfigError("projector requires a space with at least 3 basis functions");
  const int points = space_.degree + 3;
  const QuadratureRule1d reference = gauss_rule(points);
  const double h = space_.grid_size();
  nodes_.reserve(points * space_.num_intervals);
  weights_.reserve(points * space_.num_intervals);
  for (int cell = 0; cell < space_.num_intervals; ++cell) {
    for (int q = 0; q < points; ++q) {
      nodes_.push_back((cell + reference.nodes[q]) * h);
      weights_.push_back(reference.weights[q] * h);
    }
  }

  const int dim = space_.dimension();
  basis_derivs_.resize(static_cast<Eigen::Index>(nodes_.size()), dim);
  basis_derivs_.setZero();
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const ActiveBasis basis = eval_basis(space_, nodes_[n], 1);
    for (int j = 0; j <= space_.degree; ++j)
      basis_derivs_(static_cast<Eigen::Index>(n), basis.first + j) =
          basis.values[j];
  }

  // Gram of the H^1 seminorm on the interior (endpoint-constrained) block.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t n = 0; n < nodes_.size(); ++n)
    gram += weights_[n] * basis_derivs_.row(static_cast<Eigen::Index>(n))
                              .transpose() *
            basis_derivs_.row(static_cast<Eigen::Index>(n));
  interior_gram_ = Eigen::LDLT<Eigen::MatrixXd>(
      gram.block(1, 1, dim - 2, dim - 2));
}

std::vector<double> Projector1d::project_sampled(
    const std::vector<double>& du_at_nodes, double u_at_0,
    double u_at_1) const {
  if (du_at_nodes.size() != nodes_.size())
    throw DomainError("sampled derivative length does not match the node set");
  const int dim = space_.dimension();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  for (std::size_t n = 0; n < nodes_.size(); ++n)
    rhs += (weights_[n] * du_at_nodes[n]) *
           basis_derivs_.row(static_cast<Eigen::Index>(n)).transpose();

  // Subtract the constrained endpoint columns: coefficients c_0 and c_{m-1}
  // carry the endpoint values of u.
  Eigen::VectorXd gram_c0 = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd gram_cm = Eigen::VectorXd::Zero(dim);
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const auto row = basis_derivs_.row(static_cast<Eigen::Index>(n));
    gram_c0 += (weights_[n] * row(0)) * row.transpose();
    gram_cm += (weights_[n] * row(dim - 1)) * row.transpose();
  }
  Eigen::VectorXd reduced = rhs.segment(1, dim - 2) -
                            u_at_0 * gram_c0.segment(1, dim - 2) -
                            u_at_1 * gram_cm.segment(1, dim - 2);
  const Eigen::VectorXd interior = interior_gram_.solve(reduced);

  std::vector<double> coeffs(dim);
  coeffs[0] = u_at_0;
  coeffs[dim - 1] = u_at_1;
  for (int i = 0; i < dim - 2; ++i) coeffs[i + 1] = interior[i];
  return coeffs;
}

std::vector<double> Projector1d::project(const Function1d& u) const {
  std::vector<double> du(nodes_.size());
  for (std::size_t n = 0; n < nodes_.size(); ++n)
    du[n] = u.derivative(nodes_[n]);
  return project_sampled(du, u.value(0.0), u.value(1.0));
}

std::vector<double> project_1d(const Projector1d& projector,
                               const Function1d& u) {
  return projector.project(u);
}

Eigen::VectorXd project_patch(const TensorSplineSpace& space,
                              const Function2d& u) {
  const Projector1d px(space.x);
  const Projector1d py(space.y);
  const std::vector<double>& nx = px.quadrature_nodes();
  const std::vector<double>& ny = py.quadrature_nodes();
  const int dim_x = space.x.dimension();
  const int dim_y = space.y.dimension();

  // x-projections of the fibers u(., y) and d/dy u(., y), for every y in the
  // y-quadrature set plus the endpoints.
  std::vector<double> ys = ny;
  ys.push_back(0.0);
  ys.push_back(1.0);
  Eigen::MatrixXd c(dim_x, ys.size());   // coefficients of Pi_x u(., y)
  Eigen::MatrixXd dc(dim_x, ys.size());  // coefficients of Pi_x du/dy(., y)
  std::vector<double> dux(nx.size()), duxy(nx.size());
  for (std::size_t m = 0; m < ys.size(); ++m) {
    const double y = ys[m];
    for (std::size_t n = 0; n < nx.size(); ++n) {
      const Vec2 q(nx[n], y);
      dux[n] = u.gradient(q).x();
      duxy[n] = u.hessian(q)(0, 1);
    }
    const std::vector<double> ci =
        px.project_sampled(dux, u.value({0.0, y}), u.value({1.0, y}));
    const std::vector<double> di = px.project_sampled(
        duxy, u.gradient({0.0, y}).y(), u.gradient({1.0, y}).y());
    for (int i = 0; i < dim_x; ++i) {
      c(i, m) = ci[i];
      dc(i, m) = di[i];
    }
  }

  // y-projection of every coefficient fiber c_i(y).
  Eigen::VectorXd coeffs(space.dimension());
  const std::size_t at0 = ny.size();
  const std::size_t at1 = ny.size() + 1;
  std::vector<double> fiber(ny.size());
  for (int i = 0; i < dim_x; ++i) {
    for (std::size_t n = 0; n < ny.size(); ++n) fiber[n] = dc(i, n);
    const std::vector<double> column =
        py.project_sampled(fiber, c(i, at0), c(i, at1));
    for (int j = 0; j < dim_y; ++j)
      coeffs[space.flat_index(i, j)] = column[j];
  }
  return coeffs;
}

Function2d pullback(const ExactSolution& exact, const GeometryMap& geometry,
                    int patch) {
  Function2d f;
  f.value = [=, &geometry](Vec2 xi) {
    return exact.value(patch, geometry.eval(xi));
  };
  f.gradient = [=, &geometry](Vec2 xi) -> Vec2 {
    const Mat2 jac = geometry.jacobian(xi);
    return jac.transpose() * exact.gradient(patch, geometry.eval(xi));
  };
  f.hessian = [=, &geometry](Vec2 xi) -> Mat2 {
    const Vec2 phys = geometry.eval(xi);
    const Mat2 jac = geometry.jacobian(xi);
    const MapHessian geo_hess = geometry.hessian(xi);
    const Vec2 grad = exact.gradient(patch, phys);
    Mat2 result = jac.transpose() * exact.hessian(patch, phys) * jac;
    for (int m = 0; m < 2; ++m) result += grad[m] * geo_hess.comp[m];
    return result;
  };
  return f;
}

std::vector<double> convergence_rates(const std::vector<double>& errors) {
  if (errors.size() < 2)
    throw DomainError("rate computation needs at least two errors");
  std::vector<double> rates;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i - 1] > 0.0))
      throw DomainError("rates are undefined for non-positive errors");
    rates.push_back(errors[i - 1] / errors[i]);
  }
  return rates;
}

}  // namespace iga
