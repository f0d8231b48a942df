// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "igasipg/assembly.hpp"

namespace iga {

enum class SolveMethod { direct, cg };
enum class Preconditioner { none, diagonal };

struct SolverSettings {
  SolveMethod method = SolveMethod::direct;
  double tolerance = 1e-12;     // CG relative residual
  std::int64_t max_iterations = 0;  // 0: defaults to 20 * N
  Preconditioner preconditioner = Preconditioner::none;
};

struct SolveStats {
  std::int64_t iterations = 0;
  double relative_residual = 0.0;
};

/// Solve the symmetric system. The direct method is a sparse LDL^T
/// factorization (with an LU fallback for the indefinite bordered zero-mean
/// system); CG applies to the positive-definite eliminated-Dirichlet case
/// only. Throws SolverError on breakdown or non-convergence.
Eigen::VectorXd solve(const SparseSymmetricMatrix& matrix,
                      const Eigen::VectorXd& rhs,
                      const SolverSettings& settings = {},
                      SolveStats* stats = nullptr);

enum class Extreme { minimum, maximum };

/// Generalized Rayleigh-quotient extreme of (A, M) with M symmetric positive
/// definite, via inverse/power iteration with M-normalization.
double extremal_rayleigh(const SparseSymmetricMatrix& a,
                         const SparseSymmetricMatrix& m, Extreme which,
                         double relative_tolerance = 1e-6);

}  // namespace iga
