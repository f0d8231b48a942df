// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>

namespace iga {

namespace {

Eigen::VectorXd solve_direct(const SparseSymmetricMatrix& matrix,
                             const Eigen::VectorXd& rhs, SolveStats* stats) {
  const Eigen::SparseMatrix<double> a = matrix.to_eigen_full();
  const double rhs_norm = rhs.norm();
  Eigen::VectorXd x;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  bool ok = ldlt.info() == Eigen::Success;
  if (ok) {
    x = ldlt.solve(rhs);
    ok = ldlt.info() == Eigen::Success && x.allFinite();
  }
  if (!ok) {
    // The bordered zero-mean system is indefinite; LDL^T without pivoting can
    // break down on it. Fall back to a pivoted LU factorization.
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
    if (lu.info() != Eigen::Success)
      throw SolverError("direct factorization breakdown");
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite())
      throw SolverError("direct solve failed");
  }
  const double residual =
      rhs_norm > 0 ? (matrix.multiply(x) - rhs).norm() / rhs_norm : 0.0;
  if (stats) {
    stats->iterations = 0;
    stats->relative_residual = residual;
  }
  if (residual > 1e-8)
    throw SolverError("direct solve residual too large: " +
                      std::to_string(residual));
  return x;
}

Eigen::VectorXd solve_cg(const SparseSymmetricMatrix& matrix,
                         const Eigen::VectorXd& rhs,
                         const SolverSettings& settings, SolveStats* stats) {
  const int n = matrix.dimension();
  const std::int64_t max_iterations =
      settings.max_iterations > 0 ? settings.max_iterations
                                  : static_cast<std::int64_t>(20) * n;
  const double rhs_norm = rhs.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (rhs_norm == 0.0) {
    if (stats) *stats = {0, 0.0};
    return x;
  }

  Eigen::VectorXd inv_diag;
  if (settings.preconditioner == Preconditioner::diagonal) {
    inv_diag = matrix.diagonal();
    for (int i = 0; i < n; ++i) {
      if (inv_diag[i] <= 0.0)
        throw SolverError("diagonal preconditioner requires positive diagonal");
      inv_diag[i] = 1.0 / inv_diag[i];
    }
  }
  const auto precondition = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    if (settings.preconditioner == Preconditioner::diagonal)
      return inv_diag.cwiseProduct(r);
    return r;
  };

  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = precondition(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  std::int64_t it = 0;
  double rel = 1.0;
  for (; it < max_iterations; ++it) {
    rel = r.norm() / rhs_norm;
    if (rel <= settings.tolerance) break;
    const Eigen::VectorXd ap = matrix.multiply(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0))
      throw SolverError("CG breakdown: matrix is not positive definite");
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    z = precondition(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  rel = r.norm() / rhs_norm;
  if (stats) {
    stats->iterations = it;
    stats->relative_residual = rel;
  }
  if (rel > settings.tolerance)
    throw SolverError("CG did not converge in " + std::to_string(it) +
                      " iterations (relative residual " + std::to_string(rel) +
                      ")");
  return x;
}

}  // namespace

Eigen::VectorXd solve(const SparseSymmetricMatrix& matrix,
                      const Eigen::VectorXd& rhs,
                      const SolverSettings& settings, SolveStats* stats) {
  if (rhs.size() != matrix.dimension())
    throw SolverError("right-hand side size mismatch");
  if (settings.tolerance <= 0.0 || settings.tolerance >= 1.0)
    throw ConfigError("solver tolerance must lie in (0, 1)");
  if (settings.method == SolveMethod::direct)
    return solve_direct(matrix, rhs, stats);
  return solve_cg(matrix, rhs, settings, stats);
}

double extremal_rayleigh(const SparseSymmetricMatrix& a,
                         const SparseSymmetricMatrix& m, Extreme which,
                         double relative_tolerance) {
  const int n = a.dimension();
  if (m.dimension() != n) throw SolverError("Rayleigh pair size mismatch");
  if (n == 0) throw SolverError("empty Rayleigh problem");

  // For the maximum: power iteration on M^-1 A; for the minimum: inverse
  // iteration A^-1 M. Both need one factorization.
  const Eigen::SparseMatrix<double> target =
      which == Extreme::maximum ? m.to_eigen_full() : a.to_eigen_full();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(target);
  if (solver.info() != Eigen::Success)
    throw SolverError("factorization for Rayleigh iteration failed");

  // Deterministic pseudo-random start to avoid hitting an invariant subspace.
  Eigen::VectorXd x(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    x[i] = ((state >> 11) * (1.0 / 9007199254740992.0)) - 0.5;
  }

  const auto m_norm = [&](const Eigen::VectorXd& v) {
    return std::sqrt(std::max(0.0, m.quadratic_form(v)));
  };
  double norm = m_norm(x);
  if (norm == 0.0) throw SolverError("degenerate M norm in Rayleigh iteration");
  x /= norm;

  double lambda = a.quadratic_form(x) / m.quadratic_form(x);
  const std::int64_t max_iterations = 100000;
  for (std::int64_t it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd y = which == Extreme::maximum
                            ? solver.solve(a.multiply(x))
                            : solver.solve(m.multiply(x));
    if (!y.allFinite()) throw SolverError("Rayleigh iteration diverged");
    norm = m_norm(y);
    if (norm == 0.0) throw SolverError("Rayleigh iteration stagnated");
    y /= norm;
    const double lambda_next = a.quadratic_form(y) / m.quadratic_form(y);
    x = y;
    const double change = std::abs(lambda_next - lambda);
    lambda = lambda_next;
    if (change <= relative_tolerance * std::abs(lambda)) return lambda;
  }
  throw SolverError("Rayleigh iteration did not converge");
}

}  // namespace iga
