#include "hwforms/solver.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <iostream>

namespace hwforms {

Eigen::VectorXd identity_state_vector(const SimplicialMesh& mesh,
                                      const DofMap& dofmap) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dofmap.total());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Vec3 T = mesh.vertices[mesh.edges[e][1]] - mesh.vertices[mesh.edges[e][0]];
    for (int i = 0; i < 3; ++i) {
      x[dofmap.theta_dof(i, e, 0)] = T[i];
      x[dofmap.theta_dof(i, e, 1)] = -T[i];
    }
  }
  return x;
}

SolutionState init_state(const SimplicialMesh& mesh, const DofMap& dofmap) {
  SolutionState s;
  s.x = identity_state_vector(mesh, dofmap);
  return s;
}

Vec3 probe_displacement(const DofMap& dofmap, const Eigen::VectorXd& x,
                        const std::vector<int>& vertices) {
  Vec3 u = Vec3::Zero();
  for (int v : vertices)
    for (int i = 0; i < 3; ++i) u[i] += x[dofmap.u_dof(i, v)];
  return vertices.empty() ? u : Vec3(u / static_cast<double>(vertices.size()));
}

namespace {

DirichletSet dirichlet_increments(const Problem& problem, double load_factor,
                                  const Eigen::VectorXd& x) {
  DirichletSet bc;
  for (const auto& [dof, value] : problem.dirichlet)
    bc.add(dof, value(load_factor) - x[dof]);
  return bc;
}

}  // namespace

StepRecord solve_load_step(const Problem& problem,
                           const std::vector<ElementBasisEval>& cache,
                           Eigen::VectorXd& x, double load_factor,
                           const SolverConfig& config) {
  const Eigen::VectorXd load = load_factor * problem.load_unit;

  StepRecord record;
  record.load_factor = load_factor;

  Eigen::SparseLU<SparseMat> lu;
  bool analyzed = false;
  double tol = config.tol_floor;

  for (int it = 0; it <= config.max_iters; ++it) {
    const DirichletSet bc = dirichlet_increments(problem, load_factor, x);
    GlobalSystem sys = assemble(problem.mesh, problem.dofmap, cache,
                                problem.law, x, load, bc);
    const double rnorm = sys.R.norm();
    record.residual_norms.push_back(rnorm);
    record.iterations = it;
    if (config.verbose)
      std::cout << "    it " << it << "  |R| = " << rnorm << "\n";

    if (it == 0) tol = std::max(config.tol_rel * rnorm, config.tol_floor);
    if (rnorm < tol) {
      record.min_J =
          global_min_J(problem.mesh, problem.dofmap, cache, x);
      for (const auto& [name, verts] : problem.probes)
        record.probe_displacements[name] =
            probe_displacement(problem.dofmap, x, verts);
      return record;
    }
    if (it == config.max_iters)
      throw SolveError("no convergence in " + std::to_string(config.max_iters) +
                       " iterations at load factor " + std::to_string(load_factor));

    if (!analyzed) {
      lu.analyzePattern(sys.K);
      analyzed = true;
    }
    lu.factorize(sys.K);
    if (lu.info() != Eigen::Success)
      throw SolveError("singular tangent at load factor " +
                       std::to_string(load_factor));
    const Eigen::VectorXd dx = lu.solve(-sys.R);

    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= config.max_halvings; ++h, alpha *= 0.5) {
      const Eigen::VectorXd trial = x + alpha * dx;
      if (global_min_J(problem.mesh, problem.dofmap, cache, trial) <= 0.0)
        continue;
      const DirichletSet trial_bc =
          dirichlet_increments(problem, load_factor, trial);
      const double rtrial =
          assemble_residue(problem.mesh, problem.dofmap, cache, problem.law,
                           trial, load, trial_bc)
              .norm();
      if (rtrial <= config.divergence_ratio * rnorm || h == config.max_halvings) {
        x = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw SolveError("step failure: halvings exhausted at load factor " +
                       std::to_string(load_factor));
  }
  throw SolveError("unreachable");
}

SolutionState run_load_schedule(
    const Problem& problem, const SolverConfig& config,
    const std::function<void(const StepRecord&, const Eigen::VectorXd&)>& on_step) {
  const std::vector<ElementBasisEval> cache =
      build_basis_cache(problem.mesh, problem.rule);

  int steps = config.steps;
  for (int attempt = 0; attempt < 2; ++attempt) {
    SolutionState state = init_state(problem.mesh, problem.dofmap);
    try {
      for (int step = 1; step <= steps; ++step) {
        const double lf = static_cast<double>(step) / steps;
        if (config.verbose)
          std::cout << "  step " << step << "/" << steps << "  load factor "
                    << lf << "\n";
        StepRecord record = solve_load_step(problem, cache, state.x, lf, config);
        record.step = step;
        state.load_factor = lf;
        state.history.push_back(record);
        if (on_step) on_step(state.history.back(), state.x);
      }
      return state;
    } catch (const SolveError& err) {
      if (attempt == 1) throw;
      if (config.verbose)
        std::cout << "  schedule refinement after failure: " << err.what()
                  << "\n";
      steps *= 2;
    }
  }
  throw SolveError("unreachable");
}

}  // namespace hwforms
