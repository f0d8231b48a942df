// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "igasipg/topology.hpp"

namespace iga {

enum class ConstraintMode { zero_mean, dirichlet };

/// Scalar callable on the physical domain, per patch: f(patch, physical point).
using PatchFunction = std::function<double(int, Vec2)>;

/// The discontinuous multipatch solution space: per-patch tensor spline
/// spaces with concatenated global numbering. No coefficient is shared
/// across patches. In dirichlet mode the boundary layer of coefficients on
/// every boundary edge is classified as constrained.
struct DgSpace {
  const MultiPatchDomain* domain = nullptr;
  ConstraintMode mode = ConstraintMode::dirichlet;
  std::vector<int> offsets;       // per patch, strictly increasing
  int total_dimension = 0;
  std::vector<char> constrained;  // per DOF; empty in zero-mean mode
  int num_free = 0;
  std::vector<int> free_index;    // DOF -> index among free DOFs, -1 if constrained

  const TensorSplineSpace& patch_space(int k) const {
    return domain->patches[k].solution_space;
  }
  int global_index(int patch, int local) const {
    return offsets[patch] + local;
  }
};

/// Requires degree >= 2 on every patch and direction.
DgSpace build_space(const MultiPatchDomain& domain, ConstraintMode mode);

/// A function of the space: one coefficient per basis function.
struct DiscreteField {
  const DgSpace* space = nullptr;
  Eigen::VectorXd coefficients;
};

/// Parametric evaluation of the patch-local spline: derivative orders dx, dy.
double eval_field(const DiscreteField& field, int patch, Vec2 point,
                  int dx = 0, int dy = 0);

/// Physical gradient via the Jacobian chain rule.
Vec2 eval_field_gradient(const DiscreteField& field, int patch, Vec2 point);

/// Physical Hessian including the geometry Hessian correction.
Mat2 eval_field_hessian(const DiscreteField& field, int patch, Vec2 point);

/// Dirichlet data interpolation: for every boundary edge, the trace
/// g(G_k(gamma(t))) is interpolated at the Greville abscissae of the edge
/// space. Returns a full-length vector carrying values on constrained DOFs
/// (zero elsewhere).
Eigen::VectorXd interpolate_boundary(const DgSpace& space,
                                     const PatchFunction& g);

/// Tensor Greville collocation of a (typically globally continuous) function,
/// patch by patch. At matching discretizations the interface traces of the
/// interpolants coincide from both sides.
DiscreteField interpolate_field(const DgSpace& space, const PatchFunction& f);

}  // namespace iga
