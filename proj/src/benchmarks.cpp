#include "hwforms/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "hwforms/vtk.hpp"

namespace hwforms {

namespace {

// Six positively oriented tets covering the unit cell, all sharing the main
// diagonal (0,0,0)-(1,1,1). Offsets are lattice increments.
constexpr int kKuhnTets[6][4][3] = {
    {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}},
    {{0, 0, 0}, {1, 0, 1}, {1, 0, 0}, {1, 1, 1}},
    {{0, 0, 0}, {1, 1, 0}, {0, 1, 0}, {1, 1, 1}},
    {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 1}},
    {{0, 0, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}},
    {{0, 0, 0}, {0, 1, 1}, {0, 0, 1}, {1, 1, 1}},
};

}  // namespace

SimplicialMesh structured_box(
    int nx, int ny, int nz,
    const std::function<Vec3(int, int, int)>& vertex_at,
    const std::function<bool(int, int, int)>& cell_mask) {
  const auto lattice = [&](int i, int j, int k) {
    return (i * (ny + 1) + j) * (nz + 1) + k;
  };

  SimplicialMesh mesh;
  std::vector<Vec3> lattice_vertices((nx + 1) * (ny + 1) * (nz + 1));
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j)
      for (int k = 0; k <= nz; ++k) lattice_vertices[lattice(i, j, k)] = vertex_at(i, j, k);

  std::vector<std::array<int, 4>> tets;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        if (cell_mask && !cell_mask(i, j, k)) continue;
        for (const auto& tet : kKuhnTets) {
          std::array<int, 4> conn;
          for (int v = 0; v < 4; ++v)
            conn[v] = lattice(i + tet[v][0], j + tet[v][1], k + tet[v][2]);
          tets.push_back(conn);
        }
      }

  // Compact away lattice vertices not referenced by any kept cell.
  std::vector<int> remap(lattice_vertices.size(), -1);
  for (const auto& t : tets)
    for (int v : t) remap[v] = 0;
  for (std::size_t v = 0; v < remap.size(); ++v)
    if (remap[v] == 0) {
      remap[v] = mesh.n_vertices();
      mesh.vertices.push_back(lattice_vertices[v]);
    }
  for (auto& t : tets)
    for (int& v : t) v = remap[v];
  mesh.tets = std::move(tets);
  mesh.derive();
  return mesh;
}

namespace {

constexpr double kGeomTol = 1e-9;

std::vector<int> vertices_where(const SimplicialMesh& mesh,
                                const std::function<bool(const Vec3&)>& pred) {
  std::vector<int> out;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (pred(mesh.vertices[v])) out.push_back(v);
  return out;
}

/// All vertices at the minimal distance from the target (resolves probe
/// points that sit between extrusion layers to the layer pair).
std::vector<int> nearest_vertices(const SimplicialMesh& mesh, const Vec3& target) {
  double best = std::numeric_limits<double>::max();
  for (const auto& v : mesh.vertices) best = std::min(best, (v - target).norm());
  std::vector<int> out;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if ((mesh.vertices[v] - target).norm() <= best + kGeomTol) out.push_back(v);
  return out;
}

std::vector<FaceLoad> boundary_faces_where(
    const SimplicialMesh& mesh, const std::function<bool(const Vec3&)>& pred,
    const Vec3& traction) {
  std::vector<FaceLoad> loads;
  for (const auto& f : mesh.boundary_faces) {
    const Vec3 centroid =
        (mesh.vertices[f[0]] + mesh.vertices[f[1]] + mesh.vertices[f[2]]) / 3.0;
    if (pred(mesh.vertices[f[0]]) && pred(mesh.vertices[f[1]]) &&
        pred(mesh.vertices[f[2]]) && pred(centroid))
      loads.push_back({f, traction});
  }
  return loads;
}

void fix_dofs(Problem& problem, const std::vector<int>& vertices,
              std::initializer_list<int> components) {
  for (int v : vertices)
    for (int c : components)
      problem.dirichlet.emplace_back(problem.dofmap.u_dof(c, v),
                                     [](double) { return 0.0; });
}

BenchmarkCase build_cook(int n) {
  BenchmarkCase bench;
  bench.name = "cook";
  bench.refinement = n;
  bench.default_steps = 10;

  // Tapered 2D profile (0,0)-(48,44)-(48,60)-(0,44), extruded one element
  // thick; the root is clamped and the far face carries the shear traction.
  const auto vertex_at = [n](int i, int j, int k) {
    const double s = static_cast<double>(i) / n;
    const double t = static_cast<double>(j) / n;
    const double y_bottom = 44.0 * s;
    const double y_top = 44.0 + 16.0 * s;
    return Vec3(48.0 * s, y_bottom + (y_top - y_bottom) * t, k);
  };
  Problem& p = bench.problem;
  p.mesh = structured_box(n, n, 1, vertex_at);
  p.dofmap = global_dof_map(p.mesh);
  p.law = MooneyRivlin::reference_stress_free(126.0, 252.0, 81661.0);
  p.rule = default_tet_rule();

  fix_dofs(p, vertices_where(p.mesh, [](const Vec3& x) { return x[0] < kGeomTol; }),
           {0, 1, 2});
  // one lateral face keeps the quasi-2D character of the profile
  fix_dofs(p, vertices_where(p.mesh, [](const Vec3& x) { return x[2] < kGeomTol; }),
           {2});

  p.load_unit = external_load(
      p.mesh, p.dofmap,
      boundary_faces_where(
          p.mesh, [](const Vec3& x) { return x[0] > 48.0 - kGeomTol; },
          Vec3(0.0, 100.0, 0.0)));

  p.probes.emplace_back("tip", nearest_vertices(p.mesh, Vec3(48.0, 52.0, 0.5)));
  return bench;
}

BenchmarkCase build_cube(int n) {
  BenchmarkCase bench;
  bench.name = "cube";
  bench.refinement = n;
  bench.default_steps = 20;

  // Quarter model of the compressed block: unit cube, symmetry planes at
  // x = 0 and y = 0, load on the quarter of the top face next to them.
  const auto vertex_at = [n](int i, int j, int k) {
    return Vec3(static_cast<double>(i) / n, static_cast<double>(j) / n,
                static_cast<double>(k) / n);
  };
  Problem& p = bench.problem;
  p.mesh = structured_box(n, n, n, vertex_at);
  p.dofmap = global_dof_map(p.mesh);
  p.law = NeoHookeanLog{80.194, 400889.806};
  p.rule = default_tet_rule();

  const auto on_loaded_patch = [](const Vec3& x) {
    return x[2] > 1.0 - kGeomTol && x[0] < 0.5 + kGeomTol && x[1] < 0.5 + kGeomTol;
  };
  fix_dofs(p, vertices_where(p.mesh, [](const Vec3& x) { return x[2] < kGeomTol; }),
           {2});
  fix_dofs(p, vertices_where(p.mesh, [](const Vec3& x) { return x[0] < kGeomTol; }),
           {0});
  fix_dofs(p, vertices_where(p.mesh, [](const Vec3& x) { return x[1] < kGeomTol; }),
           {1});
  fix_dofs(p, vertices_where(p.mesh, on_loaded_patch), {0, 1});

  p.load_unit = external_load(
      p.mesh, p.dofmap,
      boundary_faces_where(p.mesh, on_loaded_patch, Vec3(0.0, 0.0, -320.0)));

  p.probes.emplace_back("pointA", nearest_vertices(p.mesh, Vec3(0.0, 0.0, 1.0)));
  return bench;
}

BenchmarkCase build_torsion(int n) {
  BenchmarkCase bench;
  bench.name = "torsion";
  bench.refinement = n;
  bench.default_steps = 40;

  const int nz = 10 * n;
  const auto vertex_at = [n, nz](int i, int j, int k) {
    return Vec3(-0.5 + static_cast<double>(i) / n,
                -0.5 + static_cast<double>(j) / n,
                10.0 * static_cast<double>(k) / nz);
  };
  Problem& p = bench.problem;
  p.mesh = structured_box(n, n, nz, vertex_at);
  p.dofmap = global_dof_map(p.mesh);
  p.law = QuadraticMooneyRivlin::reference_stress_free(24.0, 84.0);
  p.rule = default_tet_rule();

  fix_dofs(p, vertices_where(p.mesh, [](const Vec3& x) { return x[2] < kGeomTol; }),
           {0, 1, 2});

  // Rotation control: the twist face follows a rigid in-plane rotation of
  // its reference positions, out-of-plane motion fixed.
  const auto twist_face = vertices_where(
      p.mesh, [](const Vec3& x) { return x[2] > 10.0 - kGeomTol; });
  for (int v : twist_face) {
    const double x0 = p.mesh.vertices[v][0];
    const double y0 = p.mesh.vertices[v][1];
    p.dirichlet.emplace_back(p.dofmap.u_dof(0, v), [x0, y0](double lf) {
      const double a = 2.0 * std::numbers::pi * lf;
      return x0 * (std::cos(a) - 1.0) - y0 * std::sin(a);
    });
    p.dirichlet.emplace_back(p.dofmap.u_dof(1, v), [x0, y0](double lf) {
      const double a = 2.0 * std::numbers::pi * lf;
      return x0 * std::sin(a) + y0 * (std::cos(a) - 1.0);
    });
    p.dirichlet.emplace_back(p.dofmap.u_dof(2, v), [](double) { return 0.0; });
  }

  p.load_unit = Eigen::VectorXd::Zero(p.dofmap.total());
  p.probes.emplace_back("corner", nearest_vertices(p.mesh, Vec3(0.5, 0.5, 10.0)));
  return bench;
}

struct SplitRingGeometry {
  double inner_radius = 8.0;
  double width = 6.0;       // radial extent of the section
  double height = 6.0;      // axial (y) extent
  double flange = 2.0;      // flange thickness
  double web = 2.0;         // web thickness
  double sweep_deg = 359.0;
};

BenchmarkCase build_splitring(int n) {
  BenchmarkCase bench;
  bench.name = "splitring";
  bench.refinement = n;
  bench.default_steps = 60;

  const SplitRingGeometry g;

  // Grid lines per axis: three bands radially and vertically so the flange
  // and web boundaries land on mesh lines; n cells per band.
  const auto band_coords = [n](double a, double b, double c, double d) {
    std::vector<double> xs;
    const double stops[4] = {a, b, c, d};
    for (int band = 0; band < 3; ++band)
      for (int i = 0; i < n; ++i)
        xs.push_back(stops[band] +
                     (stops[band + 1] - stops[band]) * i / static_cast<double>(n));
    xs.push_back(d);
    return xs;
  };
  const double r0 = g.inner_radius, r3 = g.inner_radius + g.width;
  const double r1 = r0 + 0.5 * (g.width - g.web), r2 = r1 + g.web;
  const double y0 = -0.5 * g.height, y3 = 0.5 * g.height;
  const double y1 = y0 + g.flange, y2 = y3 - g.flange;
  const std::vector<double> rs = band_coords(r0, r1, r2, r3);
  const std::vector<double> ys = band_coords(y0, y1, y2, y3);

  const int naz = 24 * n;
  const double sweep = g.sweep_deg * std::numbers::pi / 180.0;
  const auto vertex_at = [&](int i, int j, int k) {
    const double r = rs[i], y = ys[j];
    const double phi = sweep * k / static_cast<double>(naz);
    return Vec3(r * std::cos(phi), y, r * std::sin(phi));
  };
  // keep web cells only in the middle vertical band
  const auto cell_mask = [n](int i, int j, int) {
    const bool web_band = j >= n && j < 2 * n;
    return !web_band || (i >= n && i < 2 * n);
  };

  Problem& p = bench.problem;
  p.mesh = structured_box(3 * n, 3 * n, naz, vertex_at, cell_mask);
  p.dofmap = global_dof_map(p.mesh);
  p.law = NeoHookeanJSquared{0.4, 1.6};
  p.rule = default_tet_rule();

  // clamp the 0-degree section (z = 0 half-plane, x > 0)
  fix_dofs(p,
           vertices_where(p.mesh,
                          [](const Vec3& x) {
                            return std::abs(x[2]) < kGeomTol && x[0] > 0.0;
                          }),
           {0, 1, 2});

  // shear resultant along y spread over the far section's vertices
  const double end_phi = sweep;
  const auto end_section = vertices_where(p.mesh, [&](const Vec3& x) {
    const double phi = std::atan2(x[2], x[0]);
    const double wrapped = phi < 0.0 ? phi + 2.0 * std::numbers::pi : phi;
    return std::abs(wrapped - end_phi) * g.inner_radius < 1e-6;
  });
  std::vector<std::pair<int, Vec3>> forces;
  const double per_vertex = 12.0 / static_cast<double>(end_section.size());
  for (int v : end_section) forces.emplace_back(v, Vec3(0.0, per_vertex, 0.0));
  p.load_unit = nodal_load(p.dofmap, forces);

  p.probes.emplace_back("endSection", end_section);
  return bench;
}

}  // namespace

MaterialLaw apply_law_overrides(MaterialLaw law,
                                const std::map<std::string, double>& overrides) {
  for (const auto& [key, value] : overrides) {
    bool applied = false;
    if (auto* mr = std::get_if<MooneyRivlin>(&law)) {
      if (key == "a") mr->a = value, applied = true;
      if (key == "b") mr->b = value, applied = true;
      if (key == "c") mr->c = value, applied = true;
      if (key == "d") mr->d = value, applied = true;
    } else if (auto* nh = std::get_if<NeoHookeanLog>(&law)) {
      if (key == "mu") nh->mu = value, applied = true;
      if (key == "kappa") nh->kappa = value, applied = true;
    } else if (auto* qm = std::get_if<QuadraticMooneyRivlin>(&law)) {
      if (key == "alpha") qm->alpha = value, applied = true;
      if (key == "beta") qm->beta = value, applied = true;
      if (key == "nu") qm->nu_log = value, applied = true;
    } else if (auto* nj = std::get_if<NeoHookeanJSquared>(&law)) {
      if (key == "mu") nj->mu = value, applied = true;
      if (key == "lambda") nj->lambda = value, applied = true;
    }
    if (!applied)
      throw std::invalid_argument("unknown material parameter override '" +
                                  key + "' for " + law_name(law));
  }
  return law;
}

BenchmarkCase build_case(const std::string& name, int refinement,
                         const std::map<std::string, double>& law_overrides) {
  if (refinement < 1)
    throw std::invalid_argument("refinement must be at least 1");
  BenchmarkCase bench;
  if (name == "cook")
    bench = build_cook(refinement);
  else if (name == "cube")
    bench = build_cube(refinement);
  else if (name == "torsion")
    bench = build_torsion(refinement);
  else if (name == "splitring")
    bench = build_splitring(refinement);
  else
    throw std::invalid_argument("unknown benchmark case '" + name + "'");
  bench.problem.law = apply_law_overrides(bench.problem.law, law_overrides);
  return bench;
}

Norms convergence_norms(const SimplicialMesh& mesh, const DofMap& dofmap,
                        const std::vector<ElementBasisEval>& cache,
                        const Eigen::VectorXd& x) {
  Norms norms;
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const ElementState state = gather_state(mesh, dofmap, x, t);
    const ElementBasisEval& basis = cache[t];
    for (int q = 0; q < basis.n_qp(); ++q) {
      const double w = basis.qweight(q);
      Vec3 v[3], tau[3];
      for (int i = 0; i < 3; ++i) {
        v[i] = basis.Phi[q] * state.theta[i];
        tau[i] = basis.Psi[q] * state.t[i];
      }
      Mat3 P = Mat3::Zero();  // first Piola stress, t^i tensor area^i
      double th = 0.0;
      for (int i = 0; i < 3; ++i) {
        th += v[i].squaredNorm();
        P += tau[i] * v[(i + 1) % 3].cross(v[(i + 2) % 3]).transpose();
      }
      norms.theta_norm += w * th;
      norms.P_norm += w * P.squaredNorm();
    }
  }
  return norms;
}

void write_convergence_csv(const ConvergenceReport& report,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(12);
  out << "refinement,dofs,theta_norm,P_norm,probe_ux,probe_uy,probe_uz,"
         "rel_change_probe,rel_change_theta_norm,rel_change_P_norm\n";
  for (const auto& r : report.rows) {
    out << r.refinement << "," << r.dofs << "," << r.theta_norm << ","
        << r.P_norm << "," << r.probe[0] << "," << r.probe[1] << ","
        << r.probe[2] << "," << r.d_probe << "," << r.d_theta << "," << r.d_P
        << "\n";
  }
}

void write_history_json(const std::vector<StepRecord>& history,
                        const std::string& path) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& rec : history) {
    nlohmann::json probes;
    for (const auto& [name, u] : rec.probe_displacements)
      probes[name] = {u[0], u[1], u[2]};
    steps.push_back({{"step", rec.step},
                     {"load_factor", rec.load_factor},
                     {"iterations", rec.iterations},
                     {"residual_history", rec.residual_norms},
                     {"min_J", rec.min_J},
                     {"probe_displacements", probes}});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << steps.dump(2) << "\n";
}

std::vector<Vec3> displacement_field(const SimplicialMesh& mesh,
                                     const DofMap& dofmap,
                                     const Eigen::VectorXd& x) {
  std::vector<Vec3> u(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v)
    for (int i = 0; i < 3; ++i) u[v][i] = x[dofmap.u_dof(i, v)];
  return u;
}

ConvergenceReport run_case(const std::string& name, const RunOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);

  ConvergenceReport report;
  report.case_name = name;

  for (int refinement : options.refinements) {
    BenchmarkCase bench = build_case(name, refinement, options.law_overrides);
    report.probe_name = bench.problem.probes.front().first;

    SolverConfig config;
    config.steps = options.steps > 0 ? options.steps : bench.default_steps;
    config.tol_rel = options.tol_rel;
    config.verbose = options.verbose;

    const std::string prefix =
        options.out_dir + "/" + name + "_r" + std::to_string(refinement);
    const auto on_step = [&](const StepRecord& record, const Eigen::VectorXd& x) {
      if (!options.write_vtk) return;
      write_vtk_deformed(
          bench.problem.mesh,
          displacement_field(bench.problem.mesh, bench.problem.dofmap, x),
          prefix + "_step" + std::to_string(record.step) + ".vtk",
          name + " refinement " + std::to_string(refinement));
    };

    if (options.verbose)
      std::cout << name << " refinement " << refinement << " ("
                << bench.problem.dofmap.total() << " unknowns)\n";
    const SolutionState state =
        run_load_schedule(bench.problem, config, on_step);

    write_history_json(state.history, prefix + "_history.json");

    const auto cache = build_basis_cache(bench.problem.mesh, bench.problem.rule);
    const Norms norms = convergence_norms(bench.problem.mesh,
                                          bench.problem.dofmap, cache, state.x);
    ConvergenceRow row;
    row.refinement = refinement;
    row.dofs = bench.problem.dofmap.total();
    row.theta_norm = norms.theta_norm;
    row.P_norm = norms.P_norm;
    row.probe = state.history.back().probe_displacements.at(report.probe_name);
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      row.d_probe = (row.probe - prev.probe).norm() / std::max(1e-300, row.probe.norm());
      row.d_theta = std::abs(row.theta_norm - prev.theta_norm) /
                    std::max(1e-300, std::abs(row.theta_norm));
      row.d_P = std::abs(row.P_norm - prev.P_norm) /
                std::max(1e-300, std::abs(row.P_norm));
    }
    report.rows.push_back(row);
  }

  write_convergence_csv(report, options.out_dir + "/" + name + "_convergence.csv");
  return report;
}

}  // namespace hwforms
