// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "igasipg/analysis.hpp"
#include "igasipg/solver.hpp"

namespace iga {

/// Built-in multipatch domains. All refine uniformly from n = 2 spans per
/// direction at level 0 (grid size halved per level):
///   square1           unit square, one patch
///   square2           [0,2]x[0,1] split at x=1, matching discretizations
///   square2-nonmatch  same geometry, degrees (p, p+1) and sizes (h, h/2)
///   lshape3           three unit squares in an L
///   ring4             four curved patches (quadratic maps) around a ring
///   footprint12       irregular 12-patch polygon with bilinear maps
MultiPatchDomain builtin_domain(const std::string& name, int level, int degree,
                                const std::vector<double>& alphas = {});

std::vector<std::string> builtin_domain_names();

/// Analytic solution with matching source and boundary data.
struct ManufacturedSolution {
  std::string id;
  ExactSolution exact;
  PatchFunction source;          // f = -div(alpha grad u)
  PatchFunction boundary;        // trace of u
};

/// Built-in solutions: sine (sin(pi x) sin(pi y), uniform alpha),
/// alpha-jump (sin(pi x)/alpha_k on the split strip), poly (x^2 y^2 + x).
ManufacturedSolution builtin_solution(const std::string& id,
                                      const MultiPatchDomain& domain);

/// Spot-checks that the solution solves the PDE on every patch and is
/// continuous with continuous normal flux across interfaces. Throws
/// ConfigError when the solution does not fit the domain/coefficients.
void validate_solution(const ManufacturedSolution& solution,
                       const MultiPatchDomain& domain);

struct StudyConfig {
  std::string builtin;            // built-in domain name, or empty
  std::string geometry_file;      // geometry file path, or empty
  std::vector<int> degrees = {2};
  int level_min = 1;
  int level_max = 1;
  std::vector<double> alphas;     // empty: all ones / file values
  double sigma0 = 4.0;
  std::optional<double> sigma_override;
  ConstraintMode constraint = ConstraintMode::dirichlet;
  std::string solution = "sine";
  std::string output_csv;
  AssemblyOptions assembly;
  SolverSettings solver;
};

StudyConfig parse_study_config(const std::string& json_text);
StudyConfig load_study_config(const std::string& path);

/// Geometry file: per patch the spline degrees, interval counts, row-major
/// control-point grid and coefficient; optionally an explicit interface list.
struct GeometryFileContents {
  std::vector<GeometryMap> maps;
  std::vector<double> alphas;
  std::optional<std::vector<Interface>> interfaces;
};

GeometryFileContents parse_geometry_file(const std::string& json_text);
GeometryFileContents load_geometry_file(const std::string& path);

/// Domain for one study cell: built-in or file geometry, solution spaces of
/// the given degree at refinement level `level`.
MultiPatchDomain study_domain(const StudyConfig& config, int level, int degree);

struct StudyRow {
  int level = 0;
  int p = 0;
  std::int64_t n_dofs = 0;
  double error = 0.0;
  std::optional<double> rate;
  double seconds = 0.0;  // solve time
};

/// Sweep over degrees and levels: assemble, solve, measure the dG-norm error
/// and per-column rates. A failing cell aborts its column; the reason goes to
/// `log`. Writes the CSV to config.output_csv when set.
std::vector<StudyRow> run_study(const StudyConfig& config,
                                std::ostream* log = nullptr);

/// CSV with header level,p,N,e,rate,seconds; rate empty on the first level of
/// each column; errors in scientific notation with 6 significant digits.
void write_csv(const std::vector<StudyRow>& rows, std::ostream& out);
std::string csv_string(const std::vector<StudyRow>& rows);

/// Assemble A_h for the first degree / coarsest level of the config and write
/// it in triplet form.
void export_system_matrix(const StudyConfig& config, std::ostream& out);

}  // namespace iga
