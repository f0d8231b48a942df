// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "igasipg/splines.hpp"

using namespace iga;

namespace {

// Independent oracle: the textbook two-term recurrence, evaluated over the
// full basis without any active-window logic. `left_limit` picks the side of
// the degree-0 indicator at knots.
double oracle_basis(const std::vector<double>& knots, int i, int p, double t,
                    bool left_limit = true) {
  if (p == 0) {
    if (left_limit) {
      if (t == 0.0) return knots[i] == 0.0 && knots[i + 1] > 0.0 ? 1.0 : 0.0;
      return knots[i] < t && t <= knots[i + 1] ? 1.0 : 0.0;
    }
    if (t == 1.0) return knots[i + 1] == 1.0 && knots[i] < 1.0 ? 1.0 : 0.0;
    return knots[i] <= t && t < knots[i + 1] ? 1.0 : 0.0;
  }
  double value = 0.0;
  const double d1 = knots[i + p] - knots[i];
  if (d1 > 0.0)
    value += (t - knots[i]) / d1 * oracle_basis(knots, i, p - 1, t, left_limit);
  const double d2 = knots[i + p + 1] - knots[i + 1];
  if (d2 > 0.0)
    value += (knots[i + p + 1] - t) / d2 *
             oracle_basis(knots, i + 1, p - 1, t, left_limit);
  return value;
}

double oracle_deriv(const std::vector<double>& knots, int i, int p, double t,
                    int order, bool left_limit = true) {
  if (order == 0) return oracle_basis(knots, i, p, t, left_limit);
  double value = 0.0;
  const double d1 = knots[i + p] - knots[i];
  if (d1 > 0.0)
    value += p / d1 * oracle_deriv(knots, i, p - 1, t, order - 1, left_limit);
  const double d2 = knots[i + p + 1] - knots[i + 1];
  if (d2 > 0.0)
    value -= p / d2 * oracle_deriv(knots, i + 1, p - 1, t, order - 1, left_limit);
  return value;
}

}  // namespace

TEST_CASE("uniform open knot vector") {
  const SplineSpace1d s = SplineSpace1d::uniform(3, 4);
  CHECK(s.dimension() == 7);
  CHECK(s.knots.size() == 11);  // n + 2p + 1
  for (int i = 0; i < 4; ++i) {
    CHECK(s.knots[i] == 0.0);
    CHECK(s.knots[7 + i] == 1.0);
  }
  CHECK(s.knots[4] == doctest::Approx(0.25));
  CHECK(s.knots[6] == doctest::Approx(0.75));
  CHECK(s.grid_size() == doctest::Approx(0.25));
  CHECK_THROWS_AS(SplineSpace1d::uniform(0, 4), ConfigError);
  CHECK_THROWS_AS(SplineSpace1d::uniform(2, 0), ConfigError);
}

TEST_CASE("span lookup uses left-half-open spans") {
  const SplineSpace1d s = SplineSpace1d::uniform(2, 4);
  CHECK(s.span_of(0.0) == 0);
  CHECK(s.span_of(0.25) == 0);   // 0.25 belongs to (0, 0.25]
  CHECK(s.span_of(0.250001) == 1);
  CHECK(s.span_of(1.0) == 3);
  CHECK_THROWS_AS(s.span_of(-0.1), DomainError);
  CHECK_THROWS_AS(s.span_of(1.1), DomainError);
}

TEST_CASE("hat basis peak at the middle knot") {
  const SplineSpace1d s = SplineSpace1d::uniform(1, 2);
  const std::vector<double> dense = eval_basis_dense(s, 0.5, 0);
  CHECK(dense[0] == doctest::Approx(0.0));
  CHECK(dense[1] == doctest::Approx(1.0));
  CHECK(dense[2] == doctest::Approx(0.0));
}

TEST_CASE("quadratic basis at the interior knot") {
  const SplineSpace1d s = SplineSpace1d::uniform(2, 2);
  const std::vector<double> dense = eval_basis_dense(s, 0.5, 0);
  // Frozen from the direct recurrence: the two central functions carry 1/2.
  CHECK(dense[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(dense[1] == doctest::Approx(0.5));
  CHECK(dense[2] == doctest::Approx(0.5));
  CHECK(dense[3] == doctest::Approx(0.0).epsilon(1e-14));
  for (int i = 0; i < 4; ++i)
    CHECK(dense[i] ==
          doctest::Approx(oracle_basis(s.knots, i, 2, 0.5)).epsilon(1e-13));
}

TEST_CASE("basis values and derivatives match the direct recurrence") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int p : {1, 2, 3, 4, 5}) {
    for (int n : {1, 2, 5, 8}) {
      const SplineSpace1d s = SplineSpace1d::uniform(p, n);
      for (int trial = 0; trial < 40; ++trial) {
        const double t = uniform(rng);
        for (int order = 0; order <= std::min(2, p); ++order) {
          const std::vector<double> dense = eval_basis_dense(s, t, order);
          for (int i = 0; i < s.dimension(); ++i) {
            const double expected = oracle_deriv(s.knots, i, p, t, order);
            CHECK(dense[i] == doctest::Approx(expected).epsilon(1e-10));
          }
        }
      }
    }
  }
}

TEST_CASE("partition of unity") {
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int p : {1, 2, 4, 6}) {
    const SplineSpace1d s = SplineSpace1d::uniform(p, 7);
    for (int trial = 0; trial < 1000; ++trial) {
      const ActiveBasis basis = eval_basis(s, uniform(rng), 0);
      double sum = 0.0;
      for (double v : basis.values) sum += v;
      CHECK(std::abs(sum - 1.0) <= 1e-13);
    }
  }
}

TEST_CASE("active window agrees with dense summation") {
  std::mt19937 rng(13u);
  std::uniform_real_distribution<double> uniform(-2.0, 2.0);
  const SplineSpace1d s = SplineSpace1d::uniform(3, 5);
  std::vector<double> coeffs(s.dimension());
  for (double& c : coeffs) c = uniform(rng);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = 0.5 * (uniform(rng) / 2.0 + 1.0);
    const ActiveBasis active = eval_basis(s, t, 0);
    double via_active = 0.0;
    for (int j = 0; j <= s.degree; ++j)
      via_active += coeffs[active.first + j] * active.values[j];
    double via_dense = 0.0;
    const std::vector<double> dense = eval_basis_dense(s, t, 0);
    for (int i = 0; i < s.dimension(); ++i) via_dense += coeffs[i] * dense[i];
    CHECK(via_active == doctest::Approx(via_dense).epsilon(1e-13));
  }
}

TEST_CASE("first derivative matches central differences") {
  const double delta = 1e-5;
  std::mt19937 rng(17u);
  std::uniform_real_distribution<double> uniform(0.1, 0.9);
  for (int p : {2, 3, 5}) {
    const SplineSpace1d s = SplineSpace1d::uniform(p, 4);
    for (int trial = 0; trial < 50; ++trial) {
      const double t = uniform(rng);
      const std::vector<double> d1 = eval_basis_dense(s, t, 1);
      const std::vector<double> lo = eval_basis_dense(s, t - delta, 0);
      const std::vector<double> hi = eval_basis_dense(s, t + delta, 0);
      for (int i = 0; i < s.dimension(); ++i) {
        const double fd = (hi[i] - lo[i]) / (2.0 * delta);
        CHECK(d1[i] == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("continuity across interior knots for p >= 2") {
  for (int p : {2, 3, 4}) {
    const SplineSpace1d s = SplineSpace1d::uniform(p, 4);
    for (int knot = 1; knot < 4; ++knot) {
      const double t = knot / 4.0;
      for (int order : {0, 1}) {
        for (int i = 0; i < s.dimension(); ++i) {
          const double left = oracle_deriv(s.knots, i, p, t, order, true);
          const double right = oracle_deriv(s.knots, i, p, t, order, false);
          CHECK(std::abs(left - right) <= 1e-12);
          // The library returns the left limit at interior knots.
          CHECK(eval_basis_dense(s, t, order)[i] ==
                doctest::Approx(left).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("greville abscissae") {
  const SplineSpace1d s = SplineSpace1d::uniform(2, 2);
  const std::vector<double> g = s.greville();
  REQUIRE(g.size() == 4);
  CHECK(g.front() == doctest::Approx(0.0));
  CHECK(g[1] == doctest::Approx(0.25));
  CHECK(g[2] == doctest::Approx(0.75));
  CHECK(g.back() == doctest::Approx(1.0));
}

TEST_CASE("tensor basis: partition of unity and derivative sums") {
  const TensorSplineSpace ts = TensorSplineSpace::uniform(3, 3);
  std::mt19937 rng(19u);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 q(uniform(rng), uniform(rng));
    const ActiveTensorBasis values = eval_tensor_basis(ts, q, 0, 0);
    const ActiveTensorBasis dx = eval_tensor_basis(ts, q, 1, 0);
    double sum = 0.0, dsum = 0.0;
    for (double v : values.values) sum += v;
    for (double v : dx.values) dsum += v;
    CHECK(std::abs(sum - 1.0) <= 1e-13);
    CHECK(std::abs(dsum) <= 1e-11);
  }
  CHECK_THROWS_AS(eval_tensor_basis(ts, Vec2(1.5, 0.5), 0, 0), DomainError);
}

TEST_CASE("tensor basis is the outer product of the univariate values") {
  const TensorSplineSpace ts = TensorSplineSpace::uniform(2, 2);
  const Vec2 q(0.5, 0.5);
  const ActiveTensorBasis tensor = eval_tensor_basis(ts, q, 0, 0);
  const ActiveBasis bx = eval_basis(ts.x, q.x(), 0);
  const ActiveBasis by = eval_basis(ts.y, q.y(), 0);
  int m = 0;
  for (int j = 0; j <= 2; ++j) {
    for (int i = 0; i <= 2; ++i, ++m) {
      CHECK(tensor.values[m] ==
            doctest::Approx(bx.values[i] * by.values[j]).epsilon(1e-14));
      CHECK(tensor.indices[m] ==
            ts.flat_index(bx.first + i, by.first + j));
    }
  }
}

TEST_CASE("boundary trace indices") {
  const TensorSplineSpace ts = TensorSplineSpace::uniform(2, 2);  // 4x4
  CHECK(boundary_trace_indices(ts, EdgeTag::xlo) ==
        std::vector<int>{0, 4, 8, 12});
  CHECK(boundary_trace_indices(ts, EdgeTag::xhi) ==
        std::vector<int>{3, 7, 11, 15});
  CHECK(boundary_trace_indices(ts, EdgeTag::ylo) ==
        std::vector<int>{0, 1, 2, 3});
  CHECK(boundary_trace_indices(ts, EdgeTag::yhi) ==
        std::vector<int>{12, 13, 14, 15});
}

TEST_CASE("edge trace of a unit coefficient equals the univariate basis") {
  const TensorSplineSpace ts = TensorSplineSpace::uniform(2, 3);
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int j = 0; j < ts.y.dimension(); ++j) {
    std::vector<double> coeffs(ts.dimension(), 0.0);
    coeffs[ts.flat_index(0, j)] = 1.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double t = uniform(rng);
      const ActiveTensorBasis basis = eval_tensor_basis(ts, {0.0, t}, 0, 0);
      double trace = 0.0;
      for (std::size_t m = 0; m < basis.indices.size(); ++m)
        trace += coeffs[basis.indices[m]] * basis.values[m];
      CHECK(trace ==
            doctest::Approx(eval_basis_dense(ts.y, t, 0)[j]).epsilon(1e-13));
    }
  }
}
