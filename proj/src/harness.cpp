// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace iga {

namespace {

TensorSplineSpace solution_space(int degree, int level) {
  if (level < 0) throw ConfigError("refinement level must be >= 0");
  const int n = 2 << level;  // n = 2 at level 0, halved grid per level
  return TensorSplineSpace::uniform(degree, n);
}

std::vector<double> resolve_alphas(const std::vector<double>& alphas,
                                   std::size_t num_patches) {
  if (alphas.empty()) return std::vector<double>(num_patches, 1.0);
  if (alphas.size() != num_patches)
    throw ConfigError("alpha list has " + std::to_string(alphas.size()) +
                      " entries for " + std::to_string(num_patches) +
                      " patches");
  for (double a : alphas)
    if (!(a > 0.0)) throw ConfigError("all alpha_k must be positive");
  return alphas;
}

GeometryMap ring_patch(int quadrant) {
  // Quarter-ring between radii 1 and 2, quadratic in the angular direction.
  // The arc is the parabolic approximation of the quarter circle with the
  // tangent-intersection middle control point.
  const double theta0 = quadrant * M_PI / 2.0;
  const double theta1 = theta0 + M_PI / 2.0;
  const double mid = 0.5 * (theta0 + theta1);
  const Vec2 c0(std::cos(theta0), std::sin(theta0));
  const Vec2 c1 = std::sqrt(2.0) * Vec2(std::cos(mid), std::sin(mid));
  const Vec2 c2(std::cos(theta1), std::sin(theta1));

  GeometryMap map;
  map.space = {SplineSpace1d::uniform(1, 1), SplineSpace1d::uniform(2, 1)};
  map.control_points.resize(6);
  const std::array<Vec2, 3> arc = {c0, c1, c2};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 2; ++i) {
      const double radius = 1.0 + i;
      map.control_points[map.space.flat_index(i, j)] = radius * arc[j];
    }
  }
  if (quadrant == 2) {
    // Reverse both parameter directions (orientation preserving) so that the
    // two interfaces of this patch run against their neighbors' direction.
    std::vector<Vec2> flipped(6);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 2; ++i)
        flipped[map.space.flat_index(i, j)] =
            map.control_points[map.space.flat_index(1 - i, 2 - j)];
    map.control_points = std::move(flipped);
  }
  return map;
}

std::vector<GeometryMap> footprint_maps() {
  // 4x3 cells over [0,4]x[0,3]; interior grid nodes are perturbed by a fixed
  // pattern, so the patches are irregular quadrilaterals.
  auto vertex = [](int i, int j) -> Vec2 {
    Vec2 v(i, j);
    if (i > 0 && i < 4 && j > 0 && j < 3) {
      v.x() += 0.21 * std::sin(2.3 * i + 1.7 * j);
      v.y() += 0.17 * std::cos(1.3 * i - 0.9 * j + 0.5);
    }
    return v;
  };
  std::vector<GeometryMap> maps;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 4; ++i) {
      const Vec2 c00 = vertex(i, j);
      const Vec2 c10 = vertex(i + 1, j);
      const Vec2 c01 = vertex(i, j + 1);
      const Vec2 c11 = vertex(i + 1, j + 1);
      if (maps.size() == 7) {
        // One patch with a rotated parameterization exercises reversed and
        // cross-direction edge pairings.
        maps.push_back(GeometryMap::bilinear(c10, c11, c00, c01));
      } else {
        maps.push_back(GeometryMap::bilinear(c00, c10, c01, c11));
      }
    }
  }
  return maps;
}

}  // namespace

std::vector<std::string> builtin_domain_names() {
  return {"square1", "square2", "square2-nonmatch",
          "lshape3", "ring4",   "footprint12"};
}

MultiPatchDomain builtin_domain(const std::string& name, int level, int degree,
                                const std::vector<double>& alphas) {
  if (degree < 2) throw ConfigError("solution degree must be >= 2");
  std::vector<GeometryMap> maps;
  std::vector<TensorSplineSpace> spaces;

  if (name == "square1") {
    maps = {GeometryMap::rectangle(0, 1, 0, 1)};
  } else if (name == "square2" || name == "square2-nonmatch") {
    maps = {GeometryMap::rectangle(0, 1, 0, 1),
            GeometryMap::rectangle(1, 2, 0, 1)};
  } else if (name == "lshape3") {
    maps = {GeometryMap::rectangle(0, 1, 0, 1),
            GeometryMap::rectangle(1, 2, 0, 1),
            GeometryMap::rectangle(0, 1, 1, 2)};
  } else if (name == "ring4") {
    for (int q = 0; q < 4; ++q) maps.push_back(ring_patch(q));
  } else if (name == "footprint12") {
    maps = footprint_maps();
  } else {
    throw ConfigError("unknown built-in domain '" + name + "'");
  }

  for (std::size_t k = 0; k < maps.size(); ++k)
    spaces.push_back(solution_space(degree, level));
  if (name == "square2-nonmatch") {
    // Patch 1 runs one degree higher on half the grid size.
    const int n = 2 * (2 << level);
    spaces[1] = {SplineSpace1d::uniform(degree + 1, n),
                 SplineSpace1d::uniform(degree + 1, n)};
  }

  const std::vector<double> alpha = resolve_alphas(alphas, maps.size());
  std::vector<Patch> patches(maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k) {
    patches[k].geometry = std::move(maps[k]);
    patches[k].alpha = alpha[k];
    patches[k].solution_space = spaces[k];
  }
  return build_domain(std::move(patches));
}

// ---------------------------------------------------------------------------
// Manufactured solutions

ManufacturedSolution builtin_solution(const std::string& id,
                                      const MultiPatchDomain& domain) {
  std::vector<double> alpha(domain.num_patches());
  for (int k = 0; k < domain.num_patches(); ++k)
    alpha[k] = domain.patches[k].alpha;

  ManufacturedSolution sol;
  sol.id = id;
  const double pi = M_PI;

  if (id == "sine") {
    sol.exact.value = [pi](int, Vec2 q) {
      return std::sin(pi * q.x()) * std::sin(pi * q.y());
    };
    sol.exact.gradient = [pi](int, Vec2 q) -> Vec2 {
      return {pi * std::cos(pi * q.x()) * std::sin(pi * q.y()),
              pi * std::sin(pi * q.x()) * std::cos(pi * q.y())};
    };
    sol.exact.hessian = [pi](int, Vec2 q) -> Mat2 {
      Mat2 h;
      const double ss = std::sin(pi * q.x()) * std::sin(pi * q.y());
      const double cc = std::cos(pi * q.x()) * std::cos(pi * q.y());
      h(0, 0) = -pi * pi * ss;
      h(0, 1) = pi * pi * cc;
      h(1, 0) = h(0, 1);
      h(1, 1) = -pi * pi * ss;
      return h;
    };
    sol.source = [pi, alpha](int k, Vec2 q) {
      return alpha[k] * 2.0 * pi * pi * std::sin(pi * q.x()) *
             std::sin(pi * q.y());
    };
  } else if (id == "alpha-jump") {
    // u = sin(pi x) / alpha_k on the strip split where sin vanishes; both the
    // trace and the flux alpha u_x = pi cos(pi x) are continuous.
    sol.exact.value = [pi, alpha](int k, Vec2 q) {
      return std::sin(pi * q.x()) / alpha[k];
    };
    sol.exact.gradient = [pi, alpha](int k, Vec2 q) -> Vec2 {
      return {pi * std::cos(pi * q.x()) / alpha[k], 0.0};
    };
    sol.exact.hessian = [pi, alpha](int k, Vec2 q) -> Mat2 {
      Mat2 h = Mat2::Zero();
      h(0, 0) = -pi * pi * std::sin(pi * q.x()) / alpha[k];
      return h;
    };
    sol.source = [pi](int, Vec2 q) { return pi * pi * std::sin(pi * q.x()); };
  } else if (id == "poly") {
    sol.exact.value = [](int, Vec2 q) {
      return q.x() * q.x() * q.y() * q.y() + q.x();
    };
    sol.exact.gradient = [](int, Vec2 q) -> Vec2 {
      return {2.0 * q.x() * q.y() * q.y() + 1.0, 2.0 * q.x() * q.x() * q.y()};
    };
    sol.exact.hessian = [](int, Vec2 q) -> Mat2 {
      Mat2 h;
      h(0, 0) = 2.0 * q.y() * q.y();
      h(0, 1) = 4.0 * q.x() * q.y();
      h(1, 0) = h(0, 1);
      h(1, 1) = 2.0 * q.x() * q.x();
      return h;
    };
    sol.source = [alpha](int k, Vec2 q) {
      return -alpha[k] * (2.0 * q.y() * q.y() + 2.0 * q.x() * q.x());
    };
  } else {
    throw ConfigError("unknown manufactured solution '" + id + "'");
  }
  sol.boundary = [exact = sol.exact](int k, Vec2 q) {
    return exact.value(k, q);
  };
  return sol;
}

void validate_solution(const ManufacturedSolution& solution,
                       const MultiPatchDomain& domain) {
  std::mt19937 rng(20260809u);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // PDE residual -div(alpha grad u) = f, using the analytic Hessian.
  for (int k = 0; k < domain.num_patches(); ++k) {
    const double alpha = domain.patches[k].alpha;
    for (int s = 0; s < 100; ++s) {
      const Vec2 xi(uniform(rng), uniform(rng));
      const Vec2 q = domain.patches[k].geometry.eval(xi);
      const double laplace = solution.exact.hessian(k, q).trace();
      const double f = solution.source(k, q);
      if (std::abs(-alpha * laplace - f) > 1e-8 * std::max(1.0, std::abs(f)))
        throw ConfigError("solution '" + solution.id +
                          "' does not solve the PDE on patch " +
                          std::to_string(k));
    }
  }

  // Continuity of the trace and of the normal flux across interfaces.
  for (const Interface& face : domain.interfaces) {
    const double alpha_k = domain.patches[face.k].alpha;
    const double alpha_l = domain.patches[face.l].alpha;
    for (int s = 1; s < 20; ++s) {
      const double t = s / 20.0;
      const Vec2 q = domain.patches[face.k].geometry.eval(
          edge_point(face.edge_k, t));
      const double u_k = solution.exact.value(face.k, q);
      const double u_l = solution.exact.value(face.l, q);
      if (std::abs(u_k - u_l) > 1e-10 * std::max(1.0, std::abs(u_k)))
        throw ConfigError("solution '" + solution.id +
                          "' is discontinuous across interface " +
                          std::to_string(face.k) + "-" + std::to_string(face.l));
      const Vec2 n = edge_normal(domain.patches[face.k].geometry, face.edge_k, t);
      const double flux_k = alpha_k * solution.exact.gradient(face.k, q).dot(n);
      const double flux_l = alpha_l * solution.exact.gradient(face.l, q).dot(n);
      if (std::abs(flux_k - flux_l) > 1e-10 * std::max(1.0, std::abs(flux_k)))
        throw ConfigError("solution '" + solution.id +
                          "' has a flux jump across interface " +
                          std::to_string(face.k) + "-" + std::to_string(face.l));
    }
  }
}

// ---------------------------------------------------------------------------
// Config and geometry files

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

StudyConfig parse_study_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  StudyConfig config;
  try {
    if (!j.contains("domain")) throw ConfigError("config needs a 'domain' entry");
    if (j["domain"].is_string()) {
      config.builtin = j["domain"].get<std::string>();
      const std::vector<std::string> names = builtin_domain_names();
      if (std::find(names.begin(), names.end(), config.builtin) == names.end())
        throw ConfigError("unknown built-in domain '" + config.builtin + "'");
    } else if (j["domain"].is_object() && j["domain"].contains("file")) {
      config.geometry_file = j["domain"]["file"].get<std::string>();
    } else {
      throw ConfigError("'domain' must be a built-in name or {\"file\": path}");
    }
    if (j.contains("degrees"))
      config.degrees = j["degrees"].get<std::vector<int>>();
    if (config.degrees.empty()) throw ConfigError("'degrees' must not be empty");
    for (int p : config.degrees)
      if (p < 2) throw ConfigError("all degrees must be >= 2");
    if (j.contains("levels")) {
      const auto levels = j["levels"].get<std::vector<int>>();
      if (levels.size() != 2)
        throw ConfigError("'levels' must be [min, max]");
      config.level_min = levels[0];
      config.level_max = levels[1];
    }
    if (config.level_min < 0 || config.level_max < config.level_min)
      throw ConfigError("levels must satisfy 0 <= min <= max");
    if (j.contains("alpha"))
      config.alphas = j["alpha"].get<std::vector<double>>();
    if (j.contains("sigma0")) config.sigma0 = j["sigma0"].get<double>();
    if (j.contains("sigma") && !j["sigma"].is_null())
      config.sigma_override = j["sigma"].get<double>();
    if (j.contains("constraint")) {
      const std::string mode = j["constraint"].get<std::string>();
      if (mode == "dirichlet") {
        config.constraint = ConstraintMode::dirichlet;
      } else if (mode == "zero-mean") {
        config.constraint = ConstraintMode::zero_mean;
      } else {
        throw ConfigError("constraint must be 'dirichlet' or 'zero-mean'");
      }
    }
    if (j.contains("solution"))
      config.solution = j["solution"].get<std::string>();
    if (j.contains("output")) config.output_csv = j["output"].get<std::string>();
    if (j.contains("quadrature_extra"))
      config.assembly.extra_quad_points = j["quadrature_extra"].get<int>();
    if (j.contains("per_interface_h"))
      config.assembly.per_interface_h = j["per_interface_h"].get<bool>();
    if (j.contains("solver")) {
      const json& s = j["solver"];
      if (s.contains("method")) {
        const std::string m = s["method"].get<std::string>();
        if (m == "direct") {
          config.solver.method = SolveMethod::direct;
        } else if (m == "cg") {
          config.solver.method = SolveMethod::cg;
        } else {
          throw ConfigError("solver method must be 'direct' or 'cg'");
        }
      }
      if (s.contains("tolerance"))
        config.solver.tolerance = s["tolerance"].get<double>();
      if (s.contains("max_iterations"))
        config.solver.max_iterations = s["max_iterations"].get<std::int64_t>();
      if (s.contains("preconditioner")) {
        const std::string p = s["preconditioner"].get<std::string>();
        if (p == "none") {
          config.solver.preconditioner = Preconditioner::none;
        } else if (p == "diagonal") {
          config.solver.preconditioner = Preconditioner::diagonal;
        } else {
          throw ConfigError("preconditioner must be 'none' or 'diagonal'");
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return config;
}

StudyConfig load_study_config(const std::string& path) {
  return parse_study_config(read_file(path));
}

GeometryFileContents parse_geometry_file(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("geometry file is not valid JSON: ") +
                      e.what());
  }
  GeometryFileContents contents;
  try {
    if (!j.contains("patches") || !j["patches"].is_array() ||
        j["patches"].empty())
      throw ConfigError("geometry file needs a non-empty 'patches' array");
    for (const json& pj : j["patches"]) {
      GeometryMap map;
      const auto degrees = pj.at("degrees").get<std::vector<int>>();
      const auto intervals = pj.at("intervals").get<std::vector<int>>();
      if (degrees.size() != 2 || intervals.size() != 2)
        throw ConfigError("'degrees' and 'intervals' must have two entries");
      map.space = {SplineSpace1d::uniform(degrees[0], intervals[0]),
                   SplineSpace1d::uniform(degrees[1], intervals[1])};
      const auto points =
          pj.at("control_points").get<std::vector<std::vector<double>>>();
      if (static_cast<int>(points.size()) != map.space.dimension())
        throw ConfigError("control point grid must have dim_x * dim_y rows");
      for (const auto& xy : points) {
        if (xy.size() != 2)
          throw ConfigError("control points must be [x, y] pairs");
        map.control_points.emplace_back(xy[0], xy[1]);
      }
      contents.maps.push_back(std::move(map));
      contents.alphas.push_back(pj.contains("alpha") ? pj["alpha"].get<double>()
                                                     : 1.0);
    }
    if (j.contains("interfaces")) {
      std::vector<Interface> faces;
      for (const json& fj : j["interfaces"]) {
        Interface f;
        f.k = fj.at("k").get<int>();
        f.l = fj.at("l").get<int>();
        f.edge_k = edge_from_string(fj.at("edge_k").get<std::string>());
        f.edge_l = edge_from_string(fj.at("edge_l").get<std::string>());
        const std::string o = fj.at("orientation").get<std::string>();
        if (o == "same") {
          f.orientation = Orientation::same;
        } else if (o == "reversed") {
          f.orientation = Orientation::reversed;
        } else {
          throw ConfigError("orientation must be 'same' or 'reversed'");
        }
        faces.push_back(f);
      }
      contents.interfaces = std::move(faces);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed geometry file: ") + e.what());
  }
  return contents;
}

GeometryFileContents load_geometry_file(const std::string& path) {
  return parse_geometry_file(read_file(path));
}

MultiPatchDomain study_domain(const StudyConfig& config, int level,
                              int degree) {
  if (!config.builtin.empty())
    return builtin_domain(config.builtin, level, degree, config.alphas);
  if (config.geometry_file.empty())
    throw ConfigError("config names neither a built-in domain nor a geometry file");
  const GeometryFileContents contents = load_geometry_file(config.geometry_file);
  const std::vector<double> alpha =
      config.alphas.empty()
          ? resolve_alphas(contents.alphas, contents.maps.size())
          : resolve_alphas(config.alphas, contents.maps.size());
  std::vector<Patch> patches(contents.maps.size());
  for (std::size_t k = 0; k < contents.maps.size(); ++k) {
    patches[k].geometry = contents.maps[k];
    patches[k].alpha = alpha[k];
    patches[k].solution_space = solution_space(degree, level);
  }
  const std::vector<Interface>* explicit_faces =
      contents.interfaces ? &*contents.interfaces : nullptr;
  return build_domain(std::move(patches), explicit_faces);
}

// ---------------------------------------------------------------------------
// Studies

std::vector<StudyRow> run_study(const StudyConfig& config, std::ostream* log) {
  if (config.constraint == ConstraintMode::zero_mean &&
      config.solver.method == SolveMethod::cg)
    throw ConfigError("CG applies only to the eliminated-Dirichlet case; "
                      "the bordered zero-mean system needs the direct solver");
  std::vector<StudyRow> rows;
  for (int degree : config.degrees) {
    double previous_error = 0.0;
    bool have_previous = false;
    for (int level = config.level_min; level <= config.level_max; ++level) {
      try {
        const MultiPatchDomain domain = study_domain(config, level, degree);
        const ManufacturedSolution solution =
            builtin_solution(config.solution, domain);
        validate_solution(solution, domain);
        const DgSpace space = build_space(domain, config.constraint);
        const SipgParameters params =
            make_sipg_parameters(domain, config.sigma0, config.sigma_override);
        const AssembledSystem system = assemble_system(
            domain, space, params, solution.source,
            config.constraint == ConstraintMode::dirichlet ? &solution.boundary
                                                           : nullptr,
            config.assembly);
        const auto t0 = std::chrono::steady_clock::now();
        const Eigen::VectorXd x =
            solve(system.solve_matrix, system.solve_rhs, config.solver);
        const auto t1 = std::chrono::steady_clock::now();
        const DiscreteField field = recover_field(space, system, x);
        const ErrorReport report =
            error_vs_exact(domain, space, params, field, solution.exact);

        StudyRow row;
        row.level = level;
        row.p = degree;
        row.n_dofs = space.total_dimension;
        row.error = report.qh;
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        if (have_previous && report.qh > 0.0)
          row.rate = previous_error / report.qh;
        previous_error = report.qh;
        have_previous = true;
        rows.push_back(row);
      } catch (const Error& e) {
        if (log)
          *log << "column p=" << degree << " aborted at level " << level
               << ": " << e.what() << "\n";
        break;
      }
    }
  }
  if (!config.output_csv.empty()) {
    std::ofstream out(config.output_csv);
    if (!out) throw IoError("cannot write '" + config.output_csv + "'");
    write_csv(rows, out);
  }
  return rows;
}

void write_csv(const std::vector<StudyRow>& rows, std::ostream& out) {
  out << "level,p,N,e,rate,seconds\n";
  char buffer[160];
  for (const StudyRow& row : rows) {
    char rate[32] = "";
    if (row.rate) std::snprintf(rate, sizeof(rate), "%.4f", *row.rate);
    std::snprintf(buffer, sizeof(buffer), "%d,%d,%lld,%.5e,%s,%.3f\n",
                  row.level, row.p, static_cast<long long>(row.n_dofs),
                  row.error, rate, row.seconds);
    out << buffer;
  }
}

std::string csv_string(const std::vector<StudyRow>& rows) {
  std::ostringstream out;
  write_csv(rows, out);
  return out.str();
}

void export_system_matrix(const StudyConfig& config, std::ostream& out) {
  const int degree = config.degrees.front();
  const MultiPatchDomain domain =
      study_domain(config, config.level_min, degree);
  const ManufacturedSolution solution =
      builtin_solution(config.solution, domain);
  const DgSpace space = build_space(domain, config.constraint);
  const SipgParameters params =
      make_sipg_parameters(domain, config.sigma0, config.sigma_override);
  const AssembledSystem system = assemble_system(
      domain, space, params, solution.source,
      config.constraint == ConstraintMode::dirichlet ? &solution.boundary
                                                     : nullptr,
      config.assembly);
  system.matrix.write_triplets(out);
}

}  // namespace iga
