#ifndef HWFORMS_SOLVER_HPP
#define HWFORMS_SOLVER_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hwforms/assembly.hpp"
#include "hwforms/mesh.hpp"
#include "hwforms/quadrature.hpp"

namespace hwforms {

struct SolverConfig {
  double tol_rel = 1e-8;    // times the residual norm at the step start
  double tol_floor = 1e-12; // absolute floor
  int max_iters = 25;
  int max_halvings = 8;     // 0 recovers plain Newton
  int steps = 10;
  double divergence_ratio = 10.0;  // halve when the residual grows past this
  bool verbose = false;
};

/// A boundary-value problem ready to solve: geometry, material, constraint
/// values as functions of the load factor, and the load at full load.
struct Problem {
  SimplicialMesh mesh;
  DofMap dofmap;
  MaterialLaw law;
  QuadratureRule rule;

  // Constrained displacement unknowns; the value callback receives the load
  // factor (rotation control makes these genuinely nonlinear in it).
  std::vector<std::pair<int, std::function<double(double)>>> dirichlet;

  Eigen::VectorXd load_unit;  // scaled linearly by the load factor

  // Named vertex groups whose averaged displacement is recorded per step.
  std::vector<std::pair<std::string, std::vector<int>>> probes;
};

struct StepRecord {
  int step = 0;
  double load_factor = 0.0;
  int iterations = 0;
  std::vector<double> residual_norms;
  double min_J = 0.0;
  std::map<std::string, Vec3> probe_displacements;
};

struct SolutionState {
  Eigen::VectorXd x;
  double load_factor = 0.0;
  std::vector<StepRecord> history;
};

/// Unknown vector of the undeformed body: u = 0, t = 0, and theta
/// interpolating the reference coframe exactly (per edge a->b the slot pair
/// is (T_i, -T_i) with T the edge vector, which reproduces the constant form
/// through the Whitney combination).
Eigen::VectorXd identity_state_vector(const SimplicialMesh& mesh,
                                      const DofMap& dofmap);

SolutionState init_state(const SimplicialMesh& mesh, const DofMap& dofmap);

/// Averaged displacement of a vertex group.
Vec3 probe_displacement(const DofMap& dofmap, const Eigen::VectorXd& x,
                        const std::vector<int>& vertices);

/// Runs Newton at a fixed load factor until the residual norm drops below
/// max(tol_rel * initial norm, tol_floor). Throws SolveError on a singular
/// tangent, exhausted halvings, or too many iterations.
StepRecord solve_load_step(const Problem& problem,
                           const std::vector<ElementBasisEval>& cache,
                           Eigen::VectorXd& x, double load_factor,
                           const SolverConfig& config);

/// Ramps the load factor linearly over config.steps, warm-starting each step
/// from the previous one. A failed step triggers one automatic restart with
/// twice the steps before giving up. The optional callback sees every
/// converged step.
SolutionState run_load_schedule(
    const Problem& problem, const SolverConfig& config,
    const std::function<void(const StepRecord&, const Eigen::VectorXd&)>&
        on_step = {});

}  // namespace hwforms

#endif
