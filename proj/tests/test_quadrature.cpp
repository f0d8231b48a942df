// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "igasipg/quadrature.hpp"

using namespace iga;

namespace {

double apply(const QuadratureRule1d& rule, double (*f)(double)) {
  double sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

double spline_value(const SplineSpace1d& s, const std::vector<double>& coeffs,
                    double t) {
  const ActiveBasis basis = eval_basis(s, t, 0);
  double value = 0.0;
  for (int j = 0; j <= s.degree; ++j)
    value += coeffs[basis.first + j] * basis.values[j];
  return value;
}

}  // namespace

TEST_CASE("low-order Gauss rules on monomials") {
  CHECK(apply(gauss_rule(1), [](double t) { return t; }) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(apply(gauss_rule(2), [](double t) { return t * t; }) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(apply(gauss_rule(3), [](double t) { return std::pow(t, 5); }) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_rule(0), DomainError);
}

TEST_CASE("exactness degree 2n-1 and failure at 2n") {
  for (int n = 1; n <= 10; ++n) {
    const QuadratureRule1d rule = gauss_rule(n);
    double weight_sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      weight_sum += w;
    }
    CHECK(std::abs(weight_sum - 1.0) <= 1e-14);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], d);
      CHECK(std::abs(sum - 1.0 / (d + 1)) <= 1e-14);
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      sum += rule.weights[i] * std::pow(rule.nodes[i], 2 * n);
    CHECK(std::abs(sum - 1.0 / (2 * n + 1)) > 1e-13);
  }
}

TEST_CASE("nodes are sorted and interior") {
  for (int n : {2, 5, 12, 20}) {
    const QuadratureRule1d rule = gauss_rule(n);
    for (int i = 0; i < n; ++i) {
      CHECK(rule.nodes[i] > 0.0);
      CHECK(rule.nodes[i] < 1.0);
      if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
  }
}

TEST_CASE("element rule cell layout") {
  const TensorSplineSpace ts = TensorSplineSpace::uniform(2, 2);
  const ElementRule rule = element_rule(ts);
  CHECK(rule.cells.size() == 4);
  CHECK(rule.reference_x.size() == 3);
  CHECK(rule.reference_y.size() == 3);
  double volume = 0.0;
  for (const auto& cell : rule.cells)
    for (int qy = 0; qy < rule.reference_y.size(); ++qy)
      for (int qx = 0; qx < rule.reference_x.size(); ++qx)
        volume += rule.weight(cell, qx, qy);
  CHECK(volume == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("element rule integrates splines to oracle accuracy") {
  std::mt19937 rng(3u);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const TensorSplineSpace ts = TensorSplineSpace::uniform(3, 3);
  std::vector<double> cx(ts.x.dimension()), cy(ts.y.dimension());
  for (double& c : cx) c = uniform(rng);
  for (double& c : cy) c = uniform(rng);
  const auto f = [&](Vec2 q) {
    return spline_value(ts.x, cx, q.x()) * spline_value(ts.y, cy, q.y());
  };

  const ElementRule rule = element_rule(ts);
  double integral = 0.0;
  for (const auto& cell : rule.cells)
    for (int qy = 0; qy < rule.reference_y.size(); ++qy)
      for (int qx = 0; qx < rule.reference_x.size(); ++qx)
        integral += rule.weight(cell, qx, qy) * f(rule.point(cell, qx, qy));

  // 20-point oracle rule per cell.
  const QuadratureRule1d oracle = gauss_rule(20);
  double expected = 0.0;
  const int n = ts.x.num_intervals;
  for (int cxi = 0; cxi < n; ++cxi)
    for (int cyi = 0; cyi < n; ++cyi)
      for (int qx = 0; qx < 20; ++qx)
        for (int qy = 0; qy < 20; ++qy)
          expected += oracle.weights[qx] * oracle.weights[qy] / (n * n) *
                      f({(cxi + oracle.nodes[qx]) / n,
                         (cyi + oracle.nodes[qy]) / n});
  CHECK(std::abs(integral - expected) <= 1e-13);
}

TEST_CASE("interface rule: segment structure") {
  const SplineSpace1d a = SplineSpace1d::uniform(2, 2);
  SUBCASE("matching sides") {
    const InterfaceRule rule = interface_rule(a, a, Orientation::same);
    REQUIRE(rule.segments.size() == 2);
    CHECK(rule.segments[0].t0 == doctest::Approx(0.0));
    CHECK(rule.segments[0].t1 == doctest::Approx(0.5));
    CHECK(rule.segments[1].t1 == doctest::Approx(1.0));
    CHECK(rule.segments[0].nodes.size() == 3);
  }
  SUBCASE("non-matching sides") {
    const SplineSpace1d b = SplineSpace1d::uniform(2, 3);
    const InterfaceRule rule = interface_rule(a, b, Orientation::same);
    REQUIRE(rule.segments.size() == 4);
    CHECK(rule.segments[0].t1 == doctest::Approx(1.0 / 3.0));
    CHECK(rule.segments[1].t1 == doctest::Approx(0.5));
    CHECK(rule.segments[2].t1 == doctest::Approx(2.0 / 3.0));
  }
}

TEST_CASE("interface rule integrates trace products exactly") {
  std::mt19937 rng(5u);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const SplineSpace1d a = SplineSpace1d::uniform(2, 2);
  const SplineSpace1d b = SplineSpace1d::uniform(3, 3);
  std::vector<double> ca(a.dimension()), cb(b.dimension());
  for (double& c : ca) c = uniform(rng);
  for (double& c : cb) c = uniform(rng);

  for (Orientation orientation : {Orientation::same, Orientation::reversed}) {
    const auto vb = [&](double t) {
      return spline_value(
          b, cb, orientation == Orientation::same ? t : 1.0 - t);
    };
    const InterfaceRule rule = interface_rule(a, b, orientation);
    double integral = 0.0;
    for (const auto& segment : rule.segments)
      for (std::size_t q = 0; q < segment.nodes.size(); ++q)
        integral += segment.weights[q] * spline_value(a, ca, segment.nodes[q]) *
                    vb(segment.nodes[q]);

    // Oracle: 30 Gauss points per segment of the same partition.
    const QuadratureRule1d oracle = gauss_rule(30);
    double expected = 0.0;
    for (const auto& segment : rule.segments) {
      const double len = segment.t1 - segment.t0;
      for (int q = 0; q < 30; ++q) {
        const double t = segment.t0 + len * oracle.nodes[q];
        expected += len * oracle.weights[q] * spline_value(a, ca, t) * vb(t);
      }
    }
    CHECK(std::abs(integral - expected) <= 1e-13);
  }
}
