// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "igasipg/quadrature.hpp"

namespace iga {

// ---------------------------------------------------------------------------
// SparseSymmetricMatrix

SparseSymmetricMatrix SparseSymmetricMatrix::from_triplets(
    int dimension, std::vector<Triplet> triplets) {
  for (Triplet& t : triplets) {
    if (t.row < 0 || t.col < 0 || t.row >= dimension || t.col >= dimension)
      throw InternalError("triplet index out of range");
    if (t.row < t.col) std::swap(t.row, t.col);
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  SparseSymmetricMatrix m;
  m.dimension_ = dimension;
  m.row_start_.assign(dimension + 1, 0);
  std::size_t i = 0;
  while (i < triplets.size()) {
    double sum = triplets[i].value;
    std::size_t j = i + 1;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col) {
      sum += triplets[j].value;
      ++j;
    }
    m.cols_.push_back(triplets[i].col);
    m.values_.push_back(sum);
    ++m.row_start_[triplets[i].row + 1];
    i = j;
  }
  for (int r = 0; r < dimension; ++r) m.row_start_[r + 1] += m.row_start_[r];
  return m;
}

double SparseSymmetricMatrix::coeff(int i, int j) const {
  const int r = std::max(i, j);
  const int c = std::min(i, j);
  for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
    if (cols_[k] == c) return values_[k];
  return 0.0;
}

Eigen::VectorXd SparseSymmetricMatrix::multiply(
    const Eigen::VectorXd& x) const {
  if (x.size() != dimension_)
    throw InternalError("matrix-vector size mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dimension_);
  for (int r = 0; r < dimension_; ++r) {
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      const int c = cols_[k];
      const double v = values_[k];
      y[r] += v * x[c];
      if (c != r) y[c] += v * x[r];
    }
  }
  return y;
}

double SparseSymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::VectorXd SparseSymmetricMatrix::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(dimension_);
  for (int r = 0; r < dimension_; ++r)
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
      if (cols_[k] == r) d[r] = values_[k];
  return d;
}

Eigen::SparseMatrix<double> SparseSymmetricMatrix::to_eigen_full() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * values_.size());
  for (int r = 0; r < dimension_; ++r) {
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      triplets.emplace_back(r, cols_[k], values_[k]);
      if (cols_[k] != r) triplets.emplace_back(cols_[k], r, values_[k]);
    }
  }
  Eigen::SparseMatrix<double> m(dimension_, dimension_);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

SparseSymmetricMatrix SparseSymmetricMatrix::restricted(
    const std::vector<char>& keep) const {
  if (static_cast<int>(keep.size()) != dimension_)
    throw InternalError("restriction mask size mismatch");
  std::vector<int> renumber(dimension_, -1);
  int n = 0;
  for (int i = 0; i < dimension_; ++i)
    if (keep[i]) renumber[i] = n++;
  std::vector<Triplet> triplets;
  for (int r = 0; r < dimension_; ++r) {
    if (renumber[r] < 0) continue;
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      const int c = cols_[k];
      if (renumber[c] < 0) continue;
      triplets.push_back({renumber[r], renumber[c], values_[k]});
    }
  }
  return from_triplets(n, std::move(triplets));
}

SparseSymmetricMatrix SparseSymmetricMatrix::bordered(
    const SparseSymmetricMatrix& a, const Eigen::VectorXd& c) {
  if (c.size() != a.dimension_)
    throw InternalError("border vector size mismatch");
  std::vector<Triplet> triplets = a.to_triplets();
  const int n = a.dimension_;
  for (int i = 0; i < n; ++i)
    if (c[i] != 0.0) triplets.push_back({n, i, c[i]});
  triplets.push_back({n, n, 0.0});
  return from_triplets(n + 1, std::move(triplets));
}

std::vector<SparseSymmetricMatrix::Triplet>
SparseSymmetricMatrix::to_triplets() const {
  std::vector<Triplet> triplets;
  triplets.reserve(values_.size());
  for (int r = 0; r < dimension_; ++r)
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
      triplets.push_back({r, cols_[k], values_[k]});
  return triplets;
}

void SparseSymmetricMatrix::write_triplets(std::ostream& out) const {
  out << dimension_ << " " << values_.size() << "\n";
  char buffer[64];
  for (int r = 0; r < dimension_; ++r) {
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      std::snprintf(buffer, sizeof(buffer), "%d %d %.17g\n", r, cols_[k],
                    values_[k]);
      out << buffer;
    }
  }
}

void SparseSymmetricMatrix::scale_block(int begin, int end, double factor) {
  for (int r = begin; r < end; ++r)
    for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
      values_[k] *= factor;
}

// ---------------------------------------------------------------------------
// Parameters

SipgParameters make_sipg_parameters(const MultiPatchDomain& domain,
                                    double sigma0,
                                    std::optional<double> sigma_override) {
  if (sigma0 <= 0.0) throw ConfigError("sigma0 must be positive");
  const MeshQuantities mesh = global_mesh_quantities(domain);
  SipgParameters params;
  params.sigma0 = sigma0;
  params.sigma = sigma0 * mesh.p_max * mesh.p_max;
  if (sigma_override) {
    if (*sigma_override < params.sigma)
      throw ConfigError("sigma override must satisfy sigma >= sigma0 * p^2");
    params.sigma = *sigma_override;
  }
  return params;
}

// ---------------------------------------------------------------------------
// Assembly kernels

namespace {

using Triplet = SparseSymmetricMatrix::Triplet;

// Basis data at one parameter point of one patch: parametric values plus
// physical derivatives obtained through the geometry map.
struct PointBasis {
  std::vector<int> local;   // patch-local flat indices
  std::vector<double> value;
  std::vector<Vec2> grad;   // physical gradient
  std::vector<Mat2> hess;   // physical Hessian (order 2 only)
  double det = 1.0;         // det(grad G), the volume measure
};

PointBasis point_basis(const MultiPatchDomain& domain, const DgSpace& space,
                       int patch, Vec2 point, int order) {
  const TensorSplineSpace& ts = space.patch_space(patch);
  const GeometryMap& geometry = domain.patches[patch].geometry;

  const ActiveBasis bx0 = eval_basis(ts.x, point.x(), 0);
  const ActiveBasis bx1 = eval_basis(ts.x, point.x(), 1);
  const ActiveBasis by0 = eval_basis(ts.y, point.y(), 0);
  const ActiveBasis by1 = eval_basis(ts.y, point.y(), 1);

  const Mat2 jac = geometry.jacobian(point);
  const double det = jac.determinant();
  if (det <= 0.0)
    throw GeometryError("non-positive Jacobian determinant during assembly");
  const Mat2 inv = jac.inverse();
  const Mat2 inv_t = inv.transpose();

  const int nx = ts.x.degree + 1;
  const int ny = ts.y.degree + 1;
  PointBasis out;
  out.det = det;
  out.local.resize(nx * ny);
  out.value.resize(nx * ny);
  out.grad.resize(nx * ny);

  int m = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i, ++m) {
      out.local[m] = ts.flat_index(bx0.first + i, by0.first + j);
      out.value[m] = bx0.values[i] * by0.values[j];
      const Vec2 param_grad(bx1.values[i] * by0.values[j],
                            bx0.values[i] * by1.values[j]);
      out.grad[m] = inv_t * param_grad;
    }
  }

  if (order >= 2) {
    const ActiveBasis bx2 = eval_basis(ts.x, point.x(), 2);
    const ActiveBasis by2 = eval_basis(ts.y, point.y(), 2);
    const MapHessian geo_hess = geometry.hessian(point);
    out.hess.resize(nx * ny);
    m = 0;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i, ++m) {
        Mat2 ph;
        ph(0, 0) = bx2.values[i] * by0.values[j];
        ph(0, 1) = bx1.values[i] * by1.values[j];
        ph(1, 0) = ph(0, 1);
        ph(1, 1) = bx0.values[i] * by2.values[j];
        for (int comp = 0; comp < 2; ++comp)
          ph -= out.grad[m][comp] * geo_hess.comp[comp];
        out.hess[m] = inv_t * ph * inv;
      }
    }
  }
  return out;
}

// Patch-block matrix of the broken H^r seminorm pairing (r = 1 or 2),
// unweighted by alpha; the caller scales whole patch blocks.
std::vector<Triplet> patch_seminorm_triplets(const MultiPatchDomain& domain,
                                             const DgSpace& space, int patch,
                                             int order,
                                             const AssemblyOptions& options) {
  const TensorSplineSpace& ts = space.patch_space(patch);
  const ElementRule rule = element_rule(ts, options.extra_quad_points);
  std::vector<Triplet> triplets;
  const int active = (ts.x.degree + 1) * (ts.y.degree + 1);
  triplets.reserve(rule.cells.size() * active * (active + 1) / 2);
  std::vector<double> local(active * active);
  for (const ElementRule::Cell& cell : rule.cells) {
    std::fill(local.begin(), local.end(), 0.0);
    PointBasis basis;
    for (int qy = 0; qy < rule.reference_y.size(); ++qy) {
      for (int qx = 0; qx < rule.reference_x.size(); ++qx) {
        basis = point_basis(domain, space, patch, rule.point(cell, qx, qy),
                            order);
        const double w = rule.weight(cell, qx, qy) * basis.det;
        for (int a = 0; a < active; ++a) {
          for (int b = 0; b <= a; ++b) {
            const double pairing =
                order == 1 ? basis.grad[a].dot(basis.grad[b])
                           : basis.hess[a].cwiseProduct(basis.hess[b]).sum();
            local[a * active + b] += w * pairing;
          }
        }
      }
    }
    const int offset = space.offsets[patch];
    for (int a = 0; a < active; ++a)
      for (int b = 0; b <= a; ++b)
        triplets.push_back({offset + basis.local[a], offset + basis.local[b],
                            local[a * active + b]});
  }
  return triplets;
}

SparseSymmetricMatrix assemble_weighted_seminorm(
    const MultiPatchDomain& domain, const DgSpace& space, int order,
    const AssemblyOptions& options) {
  std::vector<Triplet> all;
  for (int k = 0; k < domain.num_patches(); ++k) {
    // Compress per patch so that the coefficient alpha_k multiplies each
    // final entry exactly once (exact linearity in alpha).
    std::vector<Triplet> block =
        patch_seminorm_triplets(domain, space, k, order, options);
    SparseSymmetricMatrix compressed =
        SparseSymmetricMatrix::from_triplets(space.total_dimension,
                                             std::move(block));
    compressed.scale_block(0, space.total_dimension,
                           domain.patches[k].alpha);
    std::vector<Triplet> scaled = compressed.to_triplets();
    all.insert(all.end(), scaled.begin(), scaled.end());
  }
  return SparseSymmetricMatrix::from_triplets(space.total_dimension,
                                              std::move(all));
}

// Data for one quadrature point of one interface.
struct InterfacePointData {
  double weight = 0.0;   // segment-scaled weight in the common parameter
  double measure = 0.0;  // physical arc-length measure |d/dt G_k(gamma(t))|
  Vec2 physical = Vec2::Zero();
  Vec2 normal_k = Vec2::Zero();
  Vec2 xi_k = Vec2::Zero(), xi_l = Vec2::Zero();
  PointBasis basis_k, basis_l;
};

const SplineSpace1d& edge_space(const TensorSplineSpace& ts, EdgeTag edge) {
  const bool vertical = (edge == EdgeTag::xlo || edge == EdgeTag::xhi);
  return vertical ? ts.y : ts.x;
}

template <class Callback>
void for_each_interface_point(const MultiPatchDomain& domain,
                              const DgSpace& space, const Interface& face,
                              const AssemblyOptions& options, int order,
                              Callback&& callback) {
  const TensorSplineSpace& ts_k = space.patch_space(face.k);
  const TensorSplineSpace& ts_l = space.patch_space(face.l);
  const InterfaceRule rule =
      interface_rule(edge_space(ts_k, face.edge_k), edge_space(ts_l, face.edge_l),
                     face.orientation, options.extra_quad_points);
  const GeometryMap& geo_k = domain.patches[face.k].geometry;
  const bool vertical_k =
      (face.edge_k == EdgeTag::xlo || face.edge_k == EdgeTag::xhi);

  for (const InterfaceRule::Segment& segment : rule.segments) {
    for (std::size_t q = 0; q < segment.nodes.size(); ++q) {
      InterfacePointData point;
      const double t = segment.nodes[q];
      point.weight = segment.weights[q];
      const double t_l = face.orientation == Orientation::same ? t : 1.0 - t;
      point.xi_k = edge_point(face.edge_k, t);
      point.xi_l = edge_point(face.edge_l, t_l);
      point.physical = geo_k.eval(point.xi_k);

      const Mat2 jac_k = geo_k.jacobian(point.xi_k);
      const Vec2 tangent = vertical_k ? Vec2(jac_k.col(1)) : Vec2(jac_k.col(0));
      point.measure = tangent.norm();
      if (point.measure < 1e-12)
        throw GeometryError("degenerate interface tangent");
      Vec2 n = jac_k.inverse().transpose() * edge_reference_normal(face.edge_k);
      point.normal_k = n.normalized();

      point.basis_k = point_basis(domain, space, face.k, point.xi_k, order);
      point.basis_l = point_basis(domain, space, face.l, point.xi_l, order);
      callback(point);
    }
  }
}

double penalty_grid_size(const MultiPatchDomain& domain, const Interface& face,
                         const AssemblyOptions& options) {
  if (!options.per_interface_h) return global_mesh_quantities(domain).h_max;
  const auto patch_h = [&](int k) {
    const TensorSplineSpace& ts = domain.patches[k].solution_space;
    return std::max(ts.x.grid_size(), ts.y.grid_size());
  };
  return std::min(patch_h(face.k), patch_h(face.l));
}

}  // namespace

SparseSymmetricMatrix assemble_volume(const MultiPatchDomain& domain,
                                      const DgSpace& space,
                                      const AssemblyOptions& options) {
  return assemble_weighted_seminorm(domain, space, 1, options);
}

SparseSymmetricMatrix assemble_penalty(const MultiPatchDomain& domain,
                                       const DgSpace& space,
                                       const SipgParameters& params,
                                       const AssemblyOptions& options) {
  std::vector<Triplet> all;
  for (const Interface& face : domain.interfaces) {
    std::vector<Triplet> triplets;
    for_each_interface_point(
        domain, space, face, options, 1, [&](const InterfacePointData& pt) {
          const double w = pt.weight * pt.measure;
          const int nk = static_cast<int>(pt.basis_k.local.size());
          const int nl = static_cast<int>(pt.basis_l.local.size());
          // Jump values: +v on side k, -v on side l.
          for (int a = 0; a < nk + nl; ++a) {
            const bool a_on_k = a < nk;
            const int ga = a_on_k
                               ? space.global_index(face.k, pt.basis_k.local[a])
                               : space.global_index(face.l,
                                                    pt.basis_l.local[a - nk]);
            const double ja = a_on_k ? pt.basis_k.value[a]
                                     : -pt.basis_l.value[a - nk];
            for (int b = 0; b <= a; ++b) {
              const bool b_on_k = b < nk;
              const int gb =
                  b_on_k ? space.global_index(face.k, pt.basis_k.local[b])
                         : space.global_index(face.l, pt.basis_l.local[b - nk]);
              const double jb = b_on_k ? pt.basis_k.value[b]
                                       : -pt.basis_l.value[b - nk];
              triplets.push_back({ga, gb, w * ja * jb});
            }
          }
        });
    SparseSymmetricMatrix compressed = SparseSymmetricMatrix::from_triplets(
        space.total_dimension, std::move(triplets));
    const double prefactor = params.sigma /
                             penalty_grid_size(domain, face, options) *
                             alpha_max(domain, face);
    compressed.scale_block(0, space.total_dimension, prefactor);
    std::vector<Triplet> scaled = compressed.to_triplets();
    all.insert(all.end(), scaled.begin(), scaled.end());
  }
  return SparseSymmetricMatrix::from_triplets(space.total_dimension,
                                              std::move(all));
}

Eigen::SparseMatrix<double> assemble_consistency(
    const MultiPatchDomain& domain, const DgSpace& space,
    const AssemblyOptions& options) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (const Interface& face : domain.interfaces) {
    const double alpha_k = domain.patches[face.k].alpha;
    const double alpha_l = domain.patches[face.l].alpha;
    for_each_interface_point(
        domain, space, face, options, 1, [&](const InterfacePointData& pt) {
          const double w = pt.weight * pt.measure;
          const int nk = static_cast<int>(pt.basis_k.local.size());
          const int nl = static_cast<int>(pt.basis_l.local.size());
          // b_ij = (phi_j, phi_i)_{B_h}: jump of phi_j against the averaged
          // alpha-weighted normal flux of phi_i.
          for (int i = 0; i < nk + nl; ++i) {
            const bool i_on_k = i < nk;
            const int gi = i_on_k
                               ? space.global_index(face.k, pt.basis_k.local[i])
                               : space.global_index(face.l,
                                                    pt.basis_l.local[i - nk]);
            const double flux =
                i_on_k ? 0.5 * alpha_k * pt.basis_k.grad[i].dot(pt.normal_k)
                       : 0.5 * alpha_l *
                             pt.basis_l.grad[i - nk].dot(pt.normal_k);
            for (int j = 0; j < nk + nl; ++j) {
              const bool j_on_k = j < nk;
              const int gj =
                  j_on_k ? space.global_index(face.k, pt.basis_k.local[j])
                         : space.global_index(face.l, pt.basis_l.local[j - nk]);
              const double jump = j_on_k ? pt.basis_k.value[j]
                                         : -pt.basis_l.value[j - nk];
              triplets.emplace_back(gi, gj, w * flux * jump);
            }
          }
        });
  }
  Eigen::SparseMatrix<double> b(space.total_dimension, space.total_dimension);
  b.setFromTriplets(triplets.begin(), triplets.end());
  return b;
}

Eigen::VectorXd assemble_load(const MultiPatchDomain& domain,
                              const DgSpace& space, const PatchFunction& f,
                              const AssemblyOptions& options) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.total_dimension);
  for (int k = 0; k < domain.num_patches(); ++k) {
    const ElementRule rule =
        element_rule(space.patch_space(k), options.extra_quad_points);
    for (const ElementRule::Cell& cell : rule.cells) {
      for (int qy = 0; qy < rule.reference_y.size(); ++qy) {
        for (int qx = 0; qx < rule.reference_x.size(); ++qx) {
          const Vec2 xi = rule.point(cell, qx, qy);
          const PointBasis basis = point_basis(domain, space, k, xi, 1);
          const Vec2 phys = domain.patches[k].geometry.eval(xi);
          const double w =
              rule.weight(cell, qx, qy) * basis.det * f(k, phys);
          for (std::size_t m = 0; m < basis.local.size(); ++m)
            load[space.global_index(k, basis.local[m])] +=
                w * basis.value[m];
        }
      }
    }
  }
  return load;
}

Eigen::VectorXd assemble_mean_vector(const MultiPatchDomain& domain,
                                     const DgSpace& space,
                                     const AssemblyOptions& options) {
  return assemble_load(
      domain, space, [](int, Vec2) { return 1.0; }, options);
}

SparseSymmetricMatrix assemble_qh_gram(const MultiPatchDomain& domain,
                                       const DgSpace& space,
                                       const SipgParameters& params, bool plus,
                                       const AssemblyOptions& options) {
  std::vector<Triplet> all = assemble_volume(domain, space, options).to_triplets();
  {
    std::vector<Triplet> penalty =
        assemble_penalty(domain, space, params, options).to_triplets();
    all.insert(all.end(), penalty.begin(), penalty.end());
  }
  if (plus) {
    SparseSymmetricMatrix h2 =
        assemble_weighted_seminorm(domain, space, 2, options);
    const double h = global_mesh_quantities(domain).h_max;
    const double weight = (h / params.sigma) * (h / params.sigma);
    h2.scale_block(0, space.total_dimension, weight);
    std::vector<Triplet> t = h2.to_triplets();
    all.insert(all.end(), t.begin(), t.end());
  }
  return SparseSymmetricMatrix::from_triplets(space.total_dimension,
                                              std::move(all));
}

AssembledSystem assemble_system(const MultiPatchDomain& domain,
                                const DgSpace& space,
                                const SipgParameters& params,
                                const PatchFunction& f,
                                const PatchFunction* dirichlet_data,
                                const AssemblyOptions& options) {
  AssembledSystem system;

  const SparseSymmetricMatrix volume = assemble_volume(domain, space, options);
  const SparseSymmetricMatrix penalty =
      assemble_penalty(domain, space, params, options);
  const Eigen::SparseMatrix<double> b =
      assemble_consistency(domain, space, options);

  // A = volume - B - B^T + penalty; the symmetric part of B enters the lower
  // triangle as b_ij + b_ji, keeping the result symmetric by construction.
  std::vector<Triplet> triplets = volume.to_triplets();
  {
    std::vector<Triplet> pen = penalty.to_triplets();
    triplets.insert(triplets.end(), pen.begin(), pen.end());
  }
  for (int outer = 0; outer < b.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(b, outer); it; ++it) {
      const int i = static_cast<int>(it.row());
      const int j = static_cast<int>(it.col());
      if (i >= j) triplets.push_back({i, j, -it.value()});
      if (j >= i) triplets.push_back({j, i, -it.value()});
    }
  }
  system.matrix = SparseSymmetricMatrix::from_triplets(space.total_dimension,
                                                       std::move(triplets));
  system.load = assemble_load(domain, space, f, options);

  if (space.mode == ConstraintMode::dirichlet) {
    system.boundary_values =
        dirichlet_data
            ? interpolate_boundary(space, *dirichlet_data)
            : Eigen::VectorXd::Zero(space.total_dimension);
    const Eigen::VectorXd lifting = system.matrix.multiply(system.boundary_values);
    system.solve_matrix = system.matrix.restricted(
        [&] {
          std::vector<char> keep(space.total_dimension);
          for (int i = 0; i < space.total_dimension; ++i)
            keep[i] = !space.constrained[i];
          return keep;
        }());
    system.solve_rhs.resize(space.num_free);
    for (int i = 0; i < space.total_dimension; ++i)
      if (space.free_index[i] >= 0)
        system.solve_rhs[space.free_index[i]] = system.load[i] - lifting[i];
  } else {
    system.boundary_values = Eigen::VectorXd::Zero(space.total_dimension);
    const Eigen::VectorXd mean = assemble_mean_vector(domain, space, options);
    system.solve_matrix = SparseSymmetricMatrix::bordered(system.matrix, mean);
    system.solve_rhs = Eigen::VectorXd::Zero(space.total_dimension + 1);
    system.solve_rhs.head(space.total_dimension) = system.load;
  }
  return system;
}

DiscreteField recover_field(const DgSpace& space,
                            const AssembledSystem& system,
                            const Eigen::VectorXd& solution) {
  DiscreteField field;
  field.space = &space;
  if (space.mode == ConstraintMode::dirichlet) {
    if (solution.size() != space.num_free)
      throw InternalError("solution size does not match free DOF count");
    field.coefficients = system.boundary_values;
    for (int i = 0; i < space.total_dimension; ++i)
      if (space.free_index[i] >= 0)
        field.coefficients[i] = solution[space.free_index[i]];
  } else {
    if (solution.size() != space.total_dimension + 1)
      throw InternalError("solution size does not match bordered system");
    field.coefficients = solution.head(space.total_dimension);
  }
  return field;
}

Eigen::VectorXd consistency_residual(const MultiPatchDomain& domain,
                                     const DgSpace& space,
                                     const SipgParameters& params,
                                     const ExactSolution& exact,
                                     const PatchFunction& f,
                                     const AssemblyOptions& options) {
  Eigen::VectorXd residual = Eigen::VectorXd::Zero(space.total_dimension);

  // Volume pairing with the exact gradient, minus the load.
  for (int k = 0; k < domain.num_patches(); ++k) {
    const double alpha = domain.patches[k].alpha;
    const ElementRule rule =
        element_rule(space.patch_space(k), options.extra_quad_points);
    for (const ElementRule::Cell& cell : rule.cells) {
      for (int qy = 0; qy < rule.reference_y.size(); ++qy) {
        for (int qx = 0; qx < rule.reference_x.size(); ++qx) {
          const Vec2 xi = rule.point(cell, qx, qy);
          const PointBasis basis = point_basis(domain, space, k, xi, 1);
          const Vec2 phys = domain.patches[k].geometry.eval(xi);
          const double w = rule.weight(cell, qx, qy) * basis.det;
          const Vec2 grad_u = exact.gradient(k, phys);
          const double f_val = f(k, phys);
          for (std::size_t m = 0; m < basis.local.size(); ++m) {
            const int g = space.global_index(k, basis.local[m]);
            residual[g] += w * (alpha * grad_u.dot(basis.grad[m]) -
                                f_val * basis.value[m]);
          }
        }
      }
    }
  }

  // Interface terms with the analytic traces of u and grad u.
  for (const Interface& face : domain.interfaces) {
    const double alpha_k = domain.patches[face.k].alpha;
    const double alpha_l = domain.patches[face.l].alpha;
    const double pen = params.sigma /
                       penalty_grid_size(domain, face, options) *
                       alpha_max(domain, face);
    for_each_interface_point(
        domain, space, face, options, 1, [&](const InterfacePointData& pt) {
          const double w = pt.weight * pt.measure;
          const double jump_u = exact.value(face.k, pt.physical) -
                                exact.value(face.l, pt.physical);
          const double flux_u =
              0.5 *
              (alpha_k * exact.gradient(face.k, pt.physical) +
               alpha_l * exact.gradient(face.l, pt.physical))
                  .dot(pt.normal_k);
          const int nk = static_cast<int>(pt.basis_k.local.size());
          const int nl = static_cast<int>(pt.basis_l.local.size());
          for (int i = 0; i < nk + nl; ++i) {
            const bool on_k = i < nk;
            const int gi = on_k
                               ? space.global_index(face.k, pt.basis_k.local[i])
                               : space.global_index(face.l,
                                                    pt.basis_l.local[i - nk]);
            const double v = on_k ? pt.basis_k.value[i]
                                  : pt.basis_l.value[i - nk];
            const double jump_i = on_k ? v : -v;
            const double flux_i =
                on_k ? 0.5 * alpha_k * pt.basis_k.grad[i].dot(pt.normal_k)
                     : 0.5 * alpha_l * pt.basis_l.grad[i - nk].dot(pt.normal_k);
            // -(u, phi_i)_B - (phi_i, u)_B + (u, phi_i)_C
            residual[gi] += w * (-jump_u * flux_i - jump_i * flux_u +
                                 pen * jump_u * jump_i);
          }
        });
  }
  return residual;
}

}  // namespace iga
