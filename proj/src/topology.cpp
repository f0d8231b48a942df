// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace iga {

namespace {

constexpr int kEdgeSamples = 33;

// Chebyshev-Lobatto points on [0,1], endpoints included.
double sample_parameter(int j) {
  return 0.5 * (1.0 - std::cos(M_PI * j / (kEdgeSamples - 1)));
}

std::vector<Vec2> edge_trace(const GeometryMap& map, EdgeTag edge) {
  std::vector<Vec2> points(kEdgeSamples);
  for (int j = 0; j < kEdgeSamples; ++j)
    points[j] = map.eval(edge_point(edge, sample_parameter(j)));
  return points;
}

double max_deviation(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                     bool reversed) {
  double dev = 0.0;
  for (int j = 0; j < kEdgeSamples; ++j) {
    const Vec2& bj = reversed ? b[kEdgeSamples - 1 - j] : b[j];
    dev = std::max(dev, (a[j] - bj).norm());
  }
  return dev;
}

// Distance from a point to the polyline through the samples of an edge.
double distance_to_polyline(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = std::numeric_limits<double>::max();
  for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
    const Vec2 a = poly[s];
    const Vec2 d = poly[s + 1] - a;
    const double len2 = d.squaredNorm();
    double t = len2 > 0 ? (p - a).dot(d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, (p - (a + t * d)).norm());
  }
  return best;
}

}  // namespace

std::vector<int> MultiPatchDomain::neighbors(int k) const {
  std::vector<int> result;
  for (const Interface& f : interfaces) {
    if (f.k == k) result.push_back(f.l);
    if (f.l == k) result.push_back(f.k);
  }
  std::sort(result.begin(), result.end());
  return result;
}

double MultiPatchDomain::diameter() const {
  Vec2 lo(std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
  Vec2 hi = -lo;
  for (const Patch& patch : patches) {
    for (const Vec2& c : patch.geometry.control_points) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
  }
  return (hi - lo).norm();
}

double alpha_max(const MultiPatchDomain& domain, const Interface& interface) {
  return std::max(domain.patches[interface.k].alpha,
                  domain.patches[interface.l].alpha);
}

MeshQuantities global_mesh_quantities(const MultiPatchDomain& domain,
                                      double ratio_threshold) {
  if (domain.patches.empty()) throw ConfigError("domain has no patches");
  MeshQuantities q;
  q.p_max = 0;
  q.p_min = std::numeric_limits<int>::max();
  q.h_max = 0.0;
  double h_min = std::numeric_limits<double>::max();
  for (const Patch& patch : domain.patches) {
    for (const SplineSpace1d* s : {&patch.solution_space.x, &patch.solution_space.y}) {
      q.p_max = std::max(q.p_max, s->degree);
      q.p_min = std::min(q.p_min, s->degree);
      q.h_max = std::max(q.h_max, s->grid_size());
      h_min = std::min(h_min, s->grid_size());
    }
  }
  q.uniformity_ratio = q.h_max / h_min;
  q.ratio_warning = q.uniformity_ratio > ratio_threshold;
  return q;
}

std::vector<Interface> discover_interfaces(const std::vector<Patch>& patches,
                                           double relative_tolerance) {
  if (patches.empty()) throw ConfigError("interface discovery needs at least one patch");

  // Absolute tolerance scaled by the bounding-box diagonal.
  Vec2 lo(std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
  Vec2 hi = -lo;
  for (const Patch& patch : patches) {
    for (const Vec2& c : patch.geometry.control_points) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
  }
  const double tol = relative_tolerance * std::max(1e-300, (hi - lo).norm());

  const int n = static_cast<int>(patches.size());
  std::vector<std::array<std::vector<Vec2>, 4>> traces(n);
  for (int k = 0; k < n; ++k)
    for (int e = 0; e < 4; ++e)
      traces[k][e] = edge_trace(patches[k].geometry, all_edges[e]);

  std::vector<Interface> interfaces;
  std::set<std::pair<int, int>> used;  // (patch, edge) pairs already matched
  for (int k = 0; k < n; ++k) {
    for (int ek = 0; ek < 4; ++ek) {
      for (int l = k + 1; l < n; ++l) {
        for (int el = 0; el < 4; ++el) {
          const double dev_same =
              max_deviation(traces[k][ek], traces[l][el], false);
          const double dev_rev =
              max_deviation(traces[k][ek], traces[l][el], true);
          if (std::min(dev_same, dev_rev) > tol) {
            // Not a full match; detect partial overlap (T-junction). Corner
            // contact accounts for up to two near samples per edge end.
            int close = 0;
            for (const Vec2& p : traces[k][ek])
              if (distance_to_polyline(p, traces[l][el]) <= tol) ++close;
            if (close > 2)
              throw TopologyError(
                  "partial edge overlap (T-junction) between patch " +
                  std::to_string(k) + " edge " + to_string(all_edges[ek]) +
                  " and patch " + std::to_string(l) + " edge " +
                  to_string(all_edges[el]));
            continue;
          }
          if (used.count({k, ek}) || used.count({l, el}))
            throw TopologyError("edge matches two different edges near patch " +
                                std::to_string(k) + "/" + std::to_string(l));
          Interface f;
          f.k = k;
          f.l = l;
          f.edge_k = all_edges[ek];
          f.edge_l = all_edges[el];
          f.orientation = dev_same <= dev_rev ? Orientation::same
                                              : Orientation::reversed;
          interfaces.push_back(f);
          used.insert({k, ek});
          used.insert({l, el});
        }
      }
    }
  }
  return interfaces;
}

namespace {

void validate_interface(const std::vector<Patch>& patches, const Interface& f,
                        double tol) {
  const auto trace_k = edge_trace(patches[f.k].geometry, f.edge_k);
  const auto trace_l = edge_trace(patches[f.l].geometry, f.edge_l);
  const double dev =
      max_deviation(trace_k, trace_l, f.orientation == Orientation::reversed);
  if (dev > tol)
    throw TopologyError("explicit interface between patch " +
                        std::to_string(f.k) + " and patch " +
                        std::to_string(f.l) + " does not match (deviation " +
                        std::to_string(dev) + ")");
}

// Spot check that patch interiors do not overlap: interior sample points of
// one patch must not invert into the interior of another. Spline patches lie
// in the convex hull of their control net, so a bounding-box test prunes
// distant pairs.
void check_interior_disjoint(const std::vector<Patch>& patches) {
  const int n = static_cast<int>(patches.size());
  std::vector<Vec2> lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    lo[k] = Vec2(std::numeric_limits<double>::max(),
                 std::numeric_limits<double>::max());
    hi[k] = -lo[k];
    for (const Vec2& c : patches[k].geometry.control_points) {
      lo[k] = lo[k].cwiseMin(c);
      hi[k] = hi[k].cwiseMax(c);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Vec2 sample =
            patches[k].geometry.eval(Vec2((i + 0.5) / 5.0, (j + 0.5) / 5.0));
        for (int l = 0; l < n; ++l) {
          if (l == k) continue;
          if ((sample.array() < lo[l].array() - 1e-12).any() ||
              (sample.array() > hi[l].array() + 1e-12).any())
            continue;
          try {
            const Vec2 q = invert_point(patches[l].geometry, sample);
            if (q.x() > 1e-9 && q.x() < 1.0 - 1e-9 && q.y() > 1e-9 &&
                q.y() < 1.0 - 1e-9)
              throw TopologyError("patch interiors overlap (patches " +
                                  std::to_string(k) + " and " +
                                  std::to_string(l) + ")");
          } catch (const GeometryError&) {
            // No preimage in the other patch: the sample lies outside it.
          }
        }
      }
    }
  }
}

}  // namespace

MultiPatchDomain build_domain(std::vector<Patch> patches,
                              const std::vector<Interface>* explicit_interfaces,
                              double relative_tolerance) {
  MultiPatchDomain domain;
  domain.patches = std::move(patches);
  const double tol = relative_tolerance * std::max(1e-300, domain.diameter());

  check_interior_disjoint(domain.patches);
  if (explicit_interfaces) {
    for (const Interface& f : *explicit_interfaces) {
      if (f.k < 0 || f.l < 0 || f.k >= domain.num_patches() ||
          f.l >= domain.num_patches() || f.k >= f.l)
        throw ConfigError("explicit interface patch indices must satisfy 0 <= k < l < K");
      validate_interface(domain.patches, f, tol);
      domain.interfaces.push_back(f);
    }
  } else {
    domain.interfaces = discover_interfaces(domain.patches, relative_tolerance);
  }

  // Neighbor cardinality |N(k)| <= 4: one interface per edge.
  std::set<std::pair<int, int>> used;
  for (const Interface& f : domain.interfaces) {
    if (!used.insert({f.k, static_cast<int>(f.edge_k)}).second ||
        !used.insert({f.l, static_cast<int>(f.edge_l)}).second)
      throw TopologyError("a patch edge participates in two interfaces");
  }

  for (int k = 0; k < domain.num_patches(); ++k) {
    if (domain.patches[k].alpha <= 0.0)
      throw ConfigError("patch coefficients must be positive");
    for (EdgeTag e : all_edges) {
      if (!used.count({k, static_cast<int>(e)}))
        domain.boundary_edges.emplace_back(k, e);
    }
  }

  // Corner-only contacts: recorded, but they carry no coupling terms.
  for (int k = 0; k < domain.num_patches(); ++k) {
    for (int l = k + 1; l < domain.num_patches(); ++l) {
      bool has_edge = false;
      for (const Interface& f : domain.interfaces)
        if (f.k == k && f.l == l) has_edge = true;
      if (has_edge) continue;
      bool touch = false;
      for (Vec2 ck : {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}) {
        const Vec2 pk = domain.patches[k].geometry.eval(ck);
        for (Vec2 cl : {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}) {
          if ((pk - domain.patches[l].geometry.eval(cl)).norm() <= tol)
            touch = true;
        }
      }
      if (touch) domain.vertex_contacts.emplace_back(k, l);
    }
  }
  return domain;
}

}  // namespace iga
