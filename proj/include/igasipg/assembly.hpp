// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <iosfwd>
#include <optional>

#include "igasipg/space.hpp"

namespace iga {

/// Symmetric sparse matrix storing the lower triangle plus diagonal in
/// compressed row format. Symmetry of the represented matrix is structural:
/// an (i,j) entry with i >= j represents both A_ij and A_ji.
class SparseSymmetricMatrix {
 public:
  struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
  };

  SparseSymmetricMatrix() = default;

  /// Triplets may contain duplicates (summed) and entries in any triangle
  /// (mirrored into the lower one).
  static SparseSymmetricMatrix from_triplets(int dimension,
                                             std::vector<Triplet> triplets);

  int dimension() const { return dimension_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

  double coeff(int i, int j) const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  double quadratic_form(const Eigen::VectorXd& x) const {
    return x.dot(multiply(x));
  }
  double max_abs() const;
  Eigen::VectorXd diagonal() const;

  /// Full symmetric Eigen copy (both triangles), for factorizations.
  Eigen::SparseMatrix<double> to_eigen_full() const;

  /// Restriction to the index set {i : keep[i] != 0}, renumbered in order.
  SparseSymmetricMatrix restricted(const std::vector<char>& keep) const;

  /// Symmetric bordered extension [[A, c], [c^T, 0]] used for the zero-mean
  /// constraint.
  static SparseSymmetricMatrix bordered(const SparseSymmetricMatrix& a,
                                        const Eigen::VectorXd& c);

  /// Coordinate text format: header "N nnz", then "row col value" lines,
  /// 0-based, lower triangle only.
  void write_triplets(std::ostream& out) const;

  /// Stored (lower-triangle) entries, for merging assembled parts.
  std::vector<Triplet> to_triplets() const;

  /// In-place scaling of a contiguous diagonal block (rows and columns in
  /// [begin, end)); entries coupling into the block from outside are left
  /// alone, which is only sound for block-diagonal content.
  void scale_block(int begin, int end, double factor);

 private:
  int dimension_ = 0;
  std::vector<std::int64_t> row_start_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Penalty scaling: sigma = sigma0 * p^2 with p the largest degree of the
/// domain, optionally overridden upward.
struct SipgParameters {
  double sigma0 = 4.0;
  double sigma = 0.0;
};

SipgParameters make_sipg_parameters(
    const MultiPatchDomain& domain, double sigma0 = 4.0,
    std::optional<double> sigma_override = std::nullopt);

struct AssemblyOptions {
  /// Extra Gauss points per direction beyond the p+1 (volume) and
  /// ceil((p_k+p_l+2)/2) (interface) bases; absorbs geometry-induced
  /// quadrature error on curved patches.
  int extra_quad_points = 1;
  /// Replace the global h in the penalty prefactor sigma/h by the smaller of
  /// the two patch-local grid sizes of each interface.
  bool per_interface_h = false;
};

/// Patchwise alpha-weighted broken H^1 (seminorm) Gram matrix; no
/// cross-patch entries. Constants lie in its kernel.
SparseSymmetricMatrix assemble_volume(const MultiPatchDomain& domain,
                                      const DgSpace& space,
                                      const AssemblyOptions& options = {});

/// Interface jump penalty (sigma/h) sum alpha_{k,l} (jump u, jump v), with
/// the physical arc-length measure.
SparseSymmetricMatrix assemble_penalty(const MultiPatchDomain& domain,
                                       const DgSpace& space,
                                       const SipgParameters& params,
                                       const AssemblyOptions& options = {});

/// Consistency form entries b_ij = (phi_j, phi_i)_{B_h}: jump of the u-slot
/// (column) against the averaged alpha-weighted normal flux of the v-slot
/// (row). Non-symmetric.
Eigen::SparseMatrix<double> assemble_consistency(
    const MultiPatchDomain& domain, const DgSpace& space,
    const AssemblyOptions& options = {});

Eigen::VectorXd assemble_load(const MultiPatchDomain& domain,
                              const DgSpace& space, const PatchFunction& f,
                              const AssemblyOptions& options = {});

/// Vector of (phi_i, 1)_{L2(Omega)}, the zero-mean constraint row.
Eigen::VectorXd assemble_mean_vector(const MultiPatchDomain& domain,
                                     const DgSpace& space,
                                     const AssemblyOptions& options = {});

/// Gram matrix of the dG-norm Q_h = broken alpha-H^1 + penalty; with plus
/// set, adds the (h/sigma)^2-weighted broken alpha-H^2 term (physical
/// Hessians through the geometry chain rule).
SparseSymmetricMatrix assemble_qh_gram(const MultiPatchDomain& domain,
                                       const DgSpace& space,
                                       const SipgParameters& params, bool plus,
                                       const AssemblyOptions& options = {});

struct AssembledSystem {
  SparseSymmetricMatrix matrix;        // A_h on the whole space
  Eigen::VectorXd load;                // (f, phi_i)
  SparseSymmetricMatrix solve_matrix;  // reduced (dirichlet) or bordered
  Eigen::VectorXd solve_rhs;
  Eigen::VectorXd boundary_values;     // dirichlet lifting, zero elsewhere
};

/// A_h = volume - B - B^T + penalty, plus the constraint handling of the
/// space: Dirichlet DOFs eliminated with lifting moved to the right-hand
/// side, or the one-row bordered zero-mean system.
AssembledSystem assemble_system(const MultiPatchDomain& domain,
                                const DgSpace& space,
                                const SipgParameters& params,
                                const PatchFunction& f,
                                const PatchFunction* dirichlet_data = nullptr,
                                const AssemblyOptions& options = {});

/// Expand a solution of system.solve_matrix to a field on the whole space.
DiscreteField recover_field(const DgSpace& space, const AssembledSystem& system,
                            const Eigen::VectorXd& solution);

/// Analytic solution with exact derivatives, per patch, in physical
/// coordinates.
struct ExactSolution {
  std::function<double(int, Vec2)> value;
  std::function<Vec2(int, Vec2)> gradient;
  std::function<Mat2(int, Vec2)> hessian;
};

/// Residual r_i = (u, phi_i)_{A_h} - (f, phi_i)_{L2} for an analytic u whose
/// exact gradient enters the consistency slots. For the exact solution this
/// vanishes up to quadrature error.
Eigen::VectorXd consistency_residual(const MultiPatchDomain& domain,
                                     const DgSpace& space,
                                     const SipgParameters& params,
                                     const ExactSolution& exact,
                                     const PatchFunction& f,
                                     const AssemblyOptions& options = {});

}  // namespace iga
