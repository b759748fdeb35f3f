#ifndef HWFORMS_BENCHMARKS_HPP
#define HWFORMS_BENCHMARKS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hwforms/solver.hpp"

namespace hwforms {

/// Structured lattice of hexahedral cells, each split into six tets along
/// the main diagonal (adjacent cells share face diagonals, so the result is
/// a valid complex). Vertices not touched by any kept cell are dropped.
SimplicialMesh structured_box(
    int nx, int ny, int nz,
    const std::function<Vec3(int, int, int)>& vertex_at,
    const std::function<bool(int, int, int)>& cell_mask = {});

/// One benchmark ready to run: the problem plus its default schedule.
struct BenchmarkCase {
  std::string name;
  int refinement = 1;
  int default_steps = 10;
  Problem problem;
};

/// Case names: cook, cube, torsion, splitring. Unknown names throw.
/// law_overrides rebinds material parameters by name (e.g. {"lambda", 2.0}).
BenchmarkCase build_case(const std::string& name, int refinement,
                         const std::map<std::string, double>& law_overrides = {});

MaterialLaw apply_law_overrides(MaterialLaw law,
                                const std::map<std::string, double>& overrides);

struct Norms {
  double theta_norm = 0.0;  // integral of sum_i |theta^i|^2
  double P_norm = 0.0;      // integral of |t^i x area^i|_F^2
};

Norms convergence_norms(const SimplicialMesh& mesh, const DofMap& dofmap,
                        const std::vector<ElementBasisEval>& cache,
                        const Eigen::VectorXd& x);

struct ConvergenceRow {
  int refinement = 0;
  int dofs = 0;
  double theta_norm = 0.0;
  double P_norm = 0.0;
  Vec3 probe = Vec3::Zero();
  // relative change against the previous refinement (0 on the first row)
  double d_probe = 0.0;
  double d_theta = 0.0;
  double d_P = 0.0;
};

struct ConvergenceReport {
  std::string case_name;
  std::string probe_name;
  std::vector<ConvergenceRow> rows;
};

void write_convergence_csv(const ConvergenceReport& report,
                           const std::string& path);

void write_history_json(const std::vector<StepRecord>& history,
                        const std::string& path);

struct RunOptions {
  std::vector<int> refinements;
  int steps = 0;         // 0 keeps the case default
  double tol_rel = 1e-8;
  std::string out_dir = ".";
  std::map<std::string, double> law_overrides;
  bool write_vtk = true;
  bool verbose = false;
};

/// Runs the load schedule for every refinement, writing
/// <case>_r<n>_history.json, <case>_r<n>_step<k>.vtk and
/// <case>_convergence.csv under out_dir.
ConvergenceReport run_case(const std::string& name, const RunOptions& options);

/// Vertex displacements gathered from the unknown vector.
std::vector<Vec3> displacement_field(const SimplicialMesh& mesh,
                                     const DofMap& dofmap,
                                     const Eigen::VectorXd& x);

}  // namespace hwforms

#endif
