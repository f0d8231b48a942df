// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "igasipg/geometry.hpp"

namespace iga {

/// A shared edge between patches k < l. edge_k / edge_l identify the
/// parameter-square edges whose images coincide; orientation says whether the
/// common parameterizations run in the same direction or opposite ones.
struct Interface {
  int k = 0;
  int l = 0;
  EdgeTag edge_k = EdgeTag::xhi;
  EdgeTag edge_l = EdgeTag::xlo;
  Orientation orientation = Orientation::same;
};

/// One patch: its geometry, diffusion coefficient, and the spline space the
/// discrete solution uses on it.
struct Patch {
  GeometryMap geometry;
  double alpha = 1.0;
  TensorSplineSpace solution_space;
};

struct MeshQuantities {
  int p_max = 0;
  int p_min = 0;
  double h_max = 0.0;        // largest grid size over patches and directions
  double uniformity_ratio = 1.0;  // h_max / h_min
  bool ratio_warning = false;
};

struct MultiPatchDomain {
  std::vector<Patch> patches;
  std::vector<Interface> interfaces;
  std::vector<std::pair<int, EdgeTag>> boundary_edges;
  std::vector<std::pair<int, int>> vertex_contacts;  // corner-only touches
  std::vector<std::string> warnings;

  int num_patches() const { return static_cast<int>(patches.size()); }
  std::vector<int> neighbors(int k) const;
  double diameter() const;  // bounding-box diagonal of all control points
};

/// max{alpha_k, alpha_l} of the two patches joined by the interface.
double alpha_max(const MultiPatchDomain& domain, const Interface& interface);

/// Global p, p_min, h; emits a warning (in the return value) when the
/// quasi-uniformity ratio h / h_k exceeds the threshold.
MeshQuantities global_mesh_quantities(const MultiPatchDomain& domain,
                                      double ratio_threshold = 4.0);

/// Find all shared edges by sampled trace agreement (33 Chebyshev points per
/// edge). Tolerance is relative to the domain diameter. Throws TopologyError
/// on partial overlaps (T-junctions) and edges matching more than one edge.
std::vector<Interface> discover_interfaces(const std::vector<Patch>& patches,
                                           double relative_tolerance = 1e-10);

/// Assemble a domain: discovers interfaces (or validates explicitly given
/// ones), classifies boundary edges, and records vertex contacts.
MultiPatchDomain build_domain(
    std::vector<Patch> patches,
    const std::vector<Interface>* explicit_interfaces = nullptr,
    double relative_tolerance = 1e-10);

}  // namespace iga
