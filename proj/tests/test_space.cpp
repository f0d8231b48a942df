// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "igasipg/harness.hpp"
#include "igasipg/solver.hpp"
#include "igasipg/space.hpp"

using namespace iga;

TEST_CASE("space dimensions and offsets") {
  const MultiPatchDomain one = builtin_domain("square1", 0, 2);
  const DgSpace s1 = build_space(one, ConstraintMode::dirichlet);
  CHECK(s1.total_dimension == 16);

  const MultiPatchDomain two = builtin_domain("square2", 0, 2);
  const DgSpace s2 = build_space(two, ConstraintMode::dirichlet);
  CHECK(s2.total_dimension == 32);
  CHECK(s2.offsets == std::vector<int>{0, 16});
}

TEST_CASE("degree below two is rejected") {
  std::vector<Patch> patches(1);
  patches[0].geometry = GeometryMap::rectangle(0, 1, 0, 1);
  patches[0].alpha = 1.0;
  patches[0].solution_space = TensorSplineSpace::uniform(1, 2);
  const MultiPatchDomain domain = build_domain(std::move(patches));
  CHECK_THROWS_AS(build_space(domain, ConstraintMode::dirichlet), ConfigError);
}

TEST_CASE("dirichlet boundary classification on the two-square domain") {
  const MultiPatchDomain domain = builtin_domain("square2", 0, 2);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  int constrained = 0;
  for (char c : space.constrained) constrained += c;
  CHECK(constrained == 20);  // 10 boundary-layer DOFs per patch
  CHECK(space.num_free == 12);

  const DgSpace zero_mean = build_space(domain, ConstraintMode::zero_mean);
  CHECK(zero_mean.num_free == 32);
}

TEST_CASE("field evaluation: constants and dense-summation oracle") {
  const MultiPatchDomain domain = builtin_domain("square2", 0, 3);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  DiscreteField ones;
  ones.space = &space;
  ones.coefficients = Eigen::VectorXd::Ones(space.total_dimension);

  std::mt19937 rng(3u);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = trial % 2;
    const Vec2 q(uniform(rng), uniform(rng));
    CHECK(eval_field(ones, k, q) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(eval_field(ones, k, q, 1, 0) == doctest::Approx(0.0).epsilon(1e-11));
  }

  DiscreteField random;
  random.space = &space;
  random.coefficients = Eigen::VectorXd::Random(space.total_dimension);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = trial % 2;
    const Vec2 q(uniform(rng), uniform(rng));
    const TensorSplineSpace& ts = space.patch_space(k);
    double dense = 0.0;
    const std::vector<double> bx = eval_basis_dense(ts.x, q.x(), 0);
    const std::vector<double> by = eval_basis_dense(ts.y, q.y(), 0);
    for (int j = 0; j < ts.y.dimension(); ++j)
      for (int i = 0; i < ts.x.dimension(); ++i)
        dense += random.coefficients[space.global_index(
                     k, ts.flat_index(i, j))] *
                 bx[i] * by[j];
    CHECK(eval_field(random, k, q) == doctest::Approx(dense).epsilon(1e-13));
  }
}

TEST_CASE("physical gradient and hessian on a curved patch") {
  const MultiPatchDomain ring = builtin_domain("ring4", 1, 3);
  const DgSpace space = build_space(ring, ConstraintMode::dirichlet);
  DiscreteField field;
  field.space = &space;
  field.coefficients = Eigen::VectorXd::Random(space.total_dimension);

  const double delta = 1e-5;
  std::mt19937 rng(5u);
  std::uniform_real_distribution<double> uniform(0.2, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = trial % 4;
    const Vec2 xi(uniform(rng), uniform(rng));
    const GeometryMap& geometry = ring.patches[k].geometry;
    const Vec2 x = geometry.eval(xi);
    const Vec2 grad = eval_field_gradient(field, k, xi);
    const Mat2 hess = eval_field_hessian(field, k, xi);
    for (int dir = 0; dir < 2; ++dir) {
      Vec2 dx = Vec2::Zero();
      dx[dir] = delta;
      const Vec2 xi_hi = invert_point(geometry, x + dx, xi);
      const Vec2 xi_lo = invert_point(geometry, x - dx, xi);
      const double fd =
          (eval_field(field, k, xi_hi) - eval_field(field, k, xi_lo)) /
          (2 * delta);
      CHECK(grad[dir] == doctest::Approx(fd).epsilon(1e-4));
      const Vec2 fd_grad = (eval_field_gradient(field, k, xi_hi) -
                            eval_field_gradient(field, k, xi_lo)) /
                           (2 * delta);
      CHECK(hess(0, dir) == doctest::Approx(fd_grad.x()).epsilon(1e-3));
      CHECK(hess(1, dir) == doctest::Approx(fd_grad.y()).epsilon(1e-3));
    }
  }
}

TEST_CASE("boundary interpolation reproduces spline trace data") {
  const MultiPatchDomain domain = builtin_domain("square1", 1, 2);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);

  SUBCASE("zero data") {
    const Eigen::VectorXd values =
        interpolate_boundary(space, [](int, Vec2) { return 0.0; });
    CHECK(values.norm() == 0.0);
  }

  SUBCASE("polynomial trace is reproduced at greville points") {
    // x^2 restricted to each edge lies in the p=2 edge space.
    const Eigen::VectorXd values = interpolate_boundary(
        space, [](int, Vec2 q) { return q.x() * q.x() + 2.0 * q.y(); });
    DiscreteField field;
    field.space = &space;
    field.coefficients = values;
    const TensorSplineSpace& ts = space.patch_space(0);
    for (EdgeTag edge : all_edges) {
      const std::vector<double> greville =
          (edge == EdgeTag::xlo || edge == EdgeTag::xhi) ? ts.y.greville()
                                                         : ts.x.greville();
      for (double g : greville) {
        const Vec2 xi = edge_point(edge, g);
        const Vec2 x = domain.patches[0].geometry.eval(xi);
        CHECK(eval_field(field, 0, xi) ==
              doctest::Approx(x.x() * x.x() + 2.0 * x.y()).epsilon(1e-12));
      }
    }
  }

  SUBCASE("sine data on the unit square vanishes") {
    const Eigen::VectorXd values = interpolate_boundary(space, [](int, Vec2 q) {
      return std::sin(M_PI * q.x()) * std::sin(M_PI * q.y());
    });
    CHECK(values.lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("greville interpolant traces agree across a matching interface") {
  const MultiPatchDomain domain = builtin_domain("square2", 1, 3);
  const DgSpace space = build_space(domain, ConstraintMode::dirichlet);
  const DiscreteField field = interpolate_field(space, [](int, Vec2 q) {
    return std::cos(1.3 * q.x()) * std::exp(0.4 * q.y()) + q.x();
  });
  for (int s = 0; s <= 32; ++s) {
    const double t = s / 32.0;
    const double left = eval_field(field, 0, {1.0, t});
    const double right = eval_field(field, 1, {0.0, t});
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
  }
}

TEST_CASE("zero-mean solve has zero mean") {
  // Pure Neumann-type problem: u = cos(pi x) cos(pi y) has vanishing normal
  // derivative on the unit square (and on the two-patch strip) and zero mean.
  for (const char* name : {"square1", "square2"}) {
    const MultiPatchDomain domain = builtin_domain(name, 2, 2);
    const DgSpace space = build_space(domain, ConstraintMode::zero_mean);
    const SipgParameters params = make_sipg_parameters(domain);
    const PatchFunction f = [](int, Vec2 q) {
      return 2.0 * M_PI * M_PI * std::cos(M_PI * q.x()) *
             std::cos(M_PI * q.y());
    };
    const AssembledSystem system =
        assemble_system(domain, space, params, f, nullptr);
    CHECK(system.solve_matrix.dimension() == space.total_dimension + 1);
    const Eigen::VectorXd x = solve(system.solve_matrix, system.solve_rhs);
    const DiscreteField u = recover_field(space, system, x);

    const Eigen::VectorXd mean_vector = assemble_mean_vector(domain, space);
    const double mean = mean_vector.dot(u.coefficients);
    const double norm = u.coefficients.norm();
    const double area = domain.num_patches();  // unit patches
    CHECK(std::abs(mean) <= 1e-10 * area * std::max(1.0, norm));

    // And the solution approximates the exact one on every patch.
    double worst = 0.0;
    for (int k = 0; k < domain.num_patches(); ++k) {
      for (int s = 1; s < 10; ++s) {
        for (int r = 1; r < 10; ++r) {
          const Vec2 xi(s / 10.0, r / 10.0);
          const Vec2 q = domain.patches[k].geometry.eval(xi);
          const double exact = std::cos(M_PI * q.x()) * std::cos(M_PI * q.y());
          worst = std::max(worst, std::abs(eval_field(u, k, xi) - exact));
        }
      }
    }
    CHECK(worst <= 5e-3);
  }
}
