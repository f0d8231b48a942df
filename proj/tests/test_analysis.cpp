// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "igasipg/harness.hpp"
#include "igasipg/quadrature.hpp"
#include "igasipg/solver.hpp"

using namespace iga;

namespace {

ExactSolution zero_solution() {
  ExactSolution exact;
  exact.value = [](int, Vec2) { return 0.0; };
  exact.gradient = [](int, Vec2) -> Vec2 { return Vec2::Zero(); };
  exact.hessian = [](int, Vec2) -> Mat2 { return Mat2::Zero(); };
  return exact;
}

}  // namespace

TEST_CASE("norm decomposition identities and gram cross-check") {
  const MultiPatchDomain domain = builtin_domain("square2", 1, 2);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  const SipgParameters params = make_sipg_parameters(domain);

  std::mt19937 rng(1u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DiscreteField field;
  field.space = &space;
  field.coefficients.resize(space.total_dimension);
  for (int i = 0; i < space.total_dimension; ++i)
    field.coefficients[i] = gauss(rng);

  const ErrorReport report =
      error_vs_exact(domain, space, params, field, zero_solution());
  CHECK(report.qh * report.qh ==
        doctest::Approx(report.broken_h1_alpha * report.broken_h1_alpha +
                        report.jump_penalty * report.jump_penalty)
            .epsilon(1e-12));
  const double h = global_mesh_quantities(domain).h_max;
  const double hs = h / params.sigma;
  CHECK(report.qh_plus * report.qh_plus ==
        doctest::Approx(report.qh * report.qh +
                        hs * hs * report.broken_h2_alpha *
                            report.broken_h2_alpha)
            .epsilon(1e-12));

  // The same numbers through the assembled Gram matrices (both quadratures
  // are exact for spline integrands on affine patches).
  const double qh_sq = assemble_qh_gram(domain, space, params, false)
                           .quadratic_form(field.coefficients);
  const double qh_plus_sq = assemble_qh_gram(domain, space, params, true)
                                .quadratic_form(field.coefficients);
  CHECK(report.qh * report.qh == doctest::Approx(qh_sq).epsilon(1e-11));
  CHECK(report.qh_plus * report.qh_plus ==
        doctest::Approx(qh_plus_sq).epsilon(1e-11));
}

TEST_CASE("field encoding the exact solution reports vanishing errors") {
  const MultiPatchDomain domain = builtin_domain("square2", 1, 3);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  const SipgParameters params = make_sipg_parameters(domain);
  const ManufacturedSolution poly = builtin_solution("poly", domain);
  // x^2 y^2 + x lies in the space for p >= 2 on affine patches; the Greville
  // interpolant reproduces it exactly.
  const DiscreteField field = interpolate_field(
      space, [&](int k, Vec2 q) { return poly.exact.value(k, q); });
  const ErrorReport report =
      error_vs_exact(domain, space, params, field, poly.exact);
  CHECK(report.qh <= 1e-10);
  CHECK(report.l2 <= 1e-11);
  CHECK(report.qh_plus <= 1e-10);
}

TEST_CASE("zero field reports the norm of the exact solution") {
  const MultiPatchDomain domain = builtin_domain("square1", 2, 2);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  const SipgParameters params = make_sipg_parameters(domain);
  const ManufacturedSolution sine = builtin_solution("sine", domain);
  DiscreteField zero;
  zero.space = &space;
  zero.coefficients = Eigen::VectorXd::Zero(space.total_dimension);
  const ErrorReport report =
      error_vs_exact(domain, space, params, zero, sine.exact);
  // |sin(pi x) sin(pi y)|_{H1} = pi / sqrt(2) on the unit square.
  CHECK(report.broken_h1_alpha ==
        doctest::Approx(M_PI / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(report.l2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.jump_penalty <= 1e-12);  // continuous exact solution
  // |u|_{H2}^2 = pi^4 (2 * 1/4 + 2 * 1/4 + ... ) = 3 pi^4 / 2... computed:
  // u_xx^2 + 2 u_xy^2 + u_yy^2 integrates to pi^4 (1/4 + 1/2 + 1/4) = pi^4.
  CHECK(report.broken_h2_alpha ==
        doctest::Approx(M_PI * M_PI).epsilon(1e-10));
}

TEST_CASE("interface quadrature annihilates continuous traces") {
  const MultiPatchDomain ring = builtin_domain("ring4", 1, 2);
  for (const Interface& face : ring.interfaces) {
    const auto f = [](Vec2 q) {
      return std::sin(1.1 * q.x() - 0.4 * q.y()) + q.x() * q.y();
    };
    const InterfaceRule rule = interface_rule(
        (face.edge_k == EdgeTag::xlo || face.edge_k == EdgeTag::xhi)
            ? ring.patches[face.k].solution_space.y
            : ring.patches[face.k].solution_space.x,
        (face.edge_l == EdgeTag::xlo || face.edge_l == EdgeTag::xhi)
            ? ring.patches[face.l].solution_space.y
            : ring.patches[face.l].solution_space.x,
        face.orientation);
    double worst = 0.0;
    for (const auto& segment : rule.segments) {
      for (std::size_t q = 0; q < segment.nodes.size(); ++q) {
        const double t = segment.nodes[q];
        const double t_l =
            face.orientation == Orientation::same ? t : 1.0 - t;
        const Vec2 xk =
            ring.patches[face.k].geometry.eval(edge_point(face.edge_k, t));
        const Vec2 xl =
            ring.patches[face.l].geometry.eval(edge_point(face.edge_l, t_l));
        worst = std::max(worst, std::abs(f(xk) - f(xl)));
      }
    }
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("projector reproduces splines and matches the plain formulation") {
  std::mt19937 rng(3u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int p : {2, 3, 4}) {
    const SplineSpace1d s = SplineSpace1d::uniform(p, 6);
    const Projector1d projector(s);

    // Idempotence on a random member of the space.
    std::vector<double> coeffs(s.dimension());
    for (double& c : coeffs) c = gauss(rng);
    const Function1d member = {
        [&](double t) {
          const ActiveBasis basis = eval_basis(s, t, 0);
          double v = 0.0;
          for (int j = 0; j <= s.degree; ++j)
            v += coeffs[basis.first + j] * basis.values[j];
          return v;
        },
        [&](double t) {
          const ActiveBasis basis = eval_basis(s, t, 1);
          double v = 0.0;
          for (int j = 0; j <= s.degree; ++j)
            v += coeffs[basis.first + j] * basis.values[j];
          return v;
        }};
    const std::vector<double> projected = projector.project(member);
    for (int i = 0; i < s.dimension(); ++i)
      CHECK(projected[i] == doctest::Approx(coeffs[i]).epsilon(1e-12));

    // Equivalence with the unconstrained H^1_D Gram formulation.
    const Function1d u = {[](double t) { return std::exp(t) * std::cos(2 * t); },
                          [](double t) {
                            return std::exp(t) * std::cos(2 * t) -
                                   2.0 * std::exp(t) * std::sin(2 * t);
                          }};
    const std::vector<double> constrained = projector.project(u);
    const int dim = s.dimension();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    const auto& nodes = projector.quadrature_nodes();
    const auto& weights = projector.quadrature_weights();
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const std::vector<double> d = eval_basis_dense(s, nodes[n], 1);
      for (int a = 0; a < dim; ++a) {
        rhs[a] += weights[n] * u.derivative(nodes[n]) * d[a];
        for (int b = 0; b < dim; ++b) gram(a, b) += weights[n] * d[a] * d[b];
      }
    }
    // (u, v)_{H1_D} adds the endpoint product at t = 0; B_0(0) = 1.
    gram(0, 0) += 1.0;
    rhs[0] += u.value(0.0);
    const Eigen::VectorXd plain = gram.ldlt().solve(rhs);
    for (int i = 0; i < dim; ++i)
      CHECK(constrained[i] == doctest::Approx(plain[i]).epsilon(1e-9));
  }
}

TEST_CASE("projector zero-mean identity and endpoint interpolation") {
  const Function1d u = {[](double t) { return std::sin(M_PI * t) + 0.3 * t; },
                        [](double t) {
                          return M_PI * std::cos(M_PI * t) + 0.3;
                        }};
  for (int p = 2; p <= 6; ++p) {
    const Projector1d projector(SplineSpace1d::uniform(p, 8));
    const std::vector<double> coeffs = projector.project(u);
    CHECK(std::abs(coeffs.front() - u.value(0.0)) <= 1e-11);
    CHECK(std::abs(coeffs.back() - u.value(1.0)) <= 1e-11);
    double mean = 0.0;
    const auto& nodes = projector.quadrature_nodes();
    const auto& weights = projector.quadrature_weights();
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const ActiveBasis basis = eval_basis(projector.space(), nodes[n], 0);
      double pu = 0.0;
      for (int j = 0; j <= p; ++j)
        pu += coeffs[basis.first + j] * basis.values[j];
      mean += weights[n] * (u.value(nodes[n]) - pu);
    }
    CHECK(std::abs(mean) <= 1e-10);
  }
}

TEST_CASE("projector converges at rate h^2 for p = 2") {
  const Function1d u = {[](double t) { return std::sin(M_PI * t); },
                        [](double t) { return M_PI * std::cos(M_PI * t); }};
  std::vector<double> errors;
  for (int n : {4, 8, 16}) {
    const Projector1d projector(SplineSpace1d::uniform(2, n));
    const std::vector<double> coeffs = projector.project(u);
    double err_sq = 0.0;
    const auto& nodes = projector.quadrature_nodes();
    const auto& weights = projector.quadrature_weights();
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      const ActiveBasis basis = eval_basis(projector.space(), nodes[m], 1);
      double du = 0.0;
      for (int j = 0; j <= 2; ++j)
        du += coeffs[basis.first + j] * basis.values[j];
      const double diff = du - u.derivative(nodes[m]);
      err_sq += weights[m] * diff * diff;
    }
    errors.push_back(std::sqrt(err_sq));
  }
  for (std::size_t i = 1; i < errors.size(); ++i)
    CHECK(std::log2(errors[i - 1] / errors[i]) >= 1.9);
}

TEST_CASE("tensor projector: reproduction and constants") {
  const TensorSplineSpace space = TensorSplineSpace::uniform(2, 3);

  SUBCASE("constants are preserved exactly") {
    const Function2d constant = {[](Vec2) { return 3.25; },
                                 [](Vec2) -> Vec2 { return Vec2::Zero(); },
                                 [](Vec2) -> Mat2 { return Mat2::Zero(); }};
    const Eigen::VectorXd coeffs = project_patch(space, constant);
    for (int i = 0; i < space.dimension(); ++i)
      CHECK(coeffs[i] == doctest::Approx(3.25).epsilon(1e-12));
  }

  SUBCASE("members of the space are reproduced") {
    // q(x, y) = (x^2 + x)(y^2 - 2y): a tensor quadratic.
    const Function2d member = {
        [](Vec2 q) {
          return (q.x() * q.x() + q.x()) * (q.y() * q.y() - 2 * q.y());
        },
        [](Vec2 q) -> Vec2 {
          return {(2 * q.x() + 1) * (q.y() * q.y() - 2 * q.y()),
                  (q.x() * q.x() + q.x()) * (2 * q.y() - 2)};
        },
        [](Vec2 q) -> Mat2 {
          Mat2 h;
          h(0, 0) = 2 * (q.y() * q.y() - 2 * q.y());
          h(0, 1) = (2 * q.x() + 1) * (2 * q.y() - 2);
          h(1, 0) = h(0, 1);
          h(1, 1) = 2 * (q.x() * q.x() + q.x());
          return h;
        }};
    const Eigen::VectorXd coeffs = project_patch(space, member);
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec2 q(uniform(rng), uniform(rng));
      const ActiveTensorBasis basis = eval_tensor_basis(space, q, 0, 0);
      double value = 0.0;
      for (std::size_t m = 0; m < basis.indices.size(); ++m)
        value += coeffs[basis.indices[m]] * basis.values[m];
      CHECK(value == doctest::Approx(member.value(q)).epsilon(1e-10));
    }
  }
}

TEST_CASE("convergence rates") {
  CHECK(convergence_rates({0.03272, 0.00741})[0] ==
        doctest::Approx(4.4).epsilon(0.01));
  CHECK(convergence_rates({0.00741, 0.00178})[0] ==
        doctest::Approx(4.2).epsilon(0.01));
  CHECK(convergence_rates({1.0, 1.0})[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(convergence_rates({1.0}), DomainError);
  CHECK_THROWS_AS(convergence_rates({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(convergence_rates({-1.0, 1.0}), DomainError);
}

TEST_CASE("discretization error is bounded by the projected error") {
  // Quasi-optimality: ||u - u_h||_{Q_h} <= C inf ||u - v_h||_{Q_h^+},
  // checked with the patchwise tensor projector as the competitor.
  const MultiPatchDomain domain = builtin_domain("square2", 2, 2);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  const SipgParameters params = make_sipg_parameters(domain);
  const ManufacturedSolution sine = builtin_solution("sine", domain);
  const AssembledSystem system =
      assemble_system(domain, space, params, sine.source, &sine.boundary);
  const DiscreteField u_h = recover_field(
      space, system, solve(system.solve_matrix, system.solve_rhs));
  const double discrete_error =
      error_vs_exact(domain, space, params, u_h, sine.exact).qh;

  DiscreteField projected;
  projected.space = &space;
  projected.coefficients.resize(space.total_dimension);
  for (int k = 0; k < domain.num_patches(); ++k) {
    const Function2d pulled =
        pullback(sine.exact, domain.patches[k].geometry, k);
    const Eigen::VectorXd coeffs =
        project_patch(domain.patches[k].solution_space, pulled);
    projected.coefficients.segment(space.offsets[k], coeffs.size()) = coeffs;
  }
  const double projected_error =
      error_vs_exact(domain, space, params, projected, sine.exact).qh_plus;
  CHECK(discrete_error <= 10.0 * projected_error);
  CHECK(projected_error < 1.0);
}
