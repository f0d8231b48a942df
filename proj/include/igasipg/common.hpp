// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

namespace iga {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Second derivatives of a map R^2 -> R^2: component m has Hessian comp[m],
/// comp[m](a,b) = d^2 G_m / (dxi_a dxi_b).
struct MapHessian {
  std::array<Mat2, 2> comp{Mat2::Zero(), Mat2::Zero()};
};

/// Edges of the parameter square, in the order x=0, x=1, y=0, y=1.
enum class EdgeTag { xlo = 0, xhi = 1, ylo = 2, yhi = 3 };

constexpr std::array<EdgeTag, 4> all_edges = {EdgeTag::xlo, EdgeTag::xhi,
                                              EdgeTag::ylo, EdgeTag::yhi};

std::string to_string(EdgeTag edge);
EdgeTag edge_from_string(const std::string& name);

/// Relative direction of the two parameterizations of a shared interface.
enum class Orientation { same, reversed };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the admissible domain (parameter point, knot range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-facing configuration (degrees, names, file contents).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Geometry map rejected (singular Jacobian, degenerate edge, inversion failure).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Patch layout violates the multipatch assumptions (T-junction, mismatch).
class TopologyError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace iga
