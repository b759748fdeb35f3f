#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SparseLU>
#include <random>

#include "hwforms/assembly.hpp"
#include "hwforms/solver.hpp"
#include "support/oracles.hpp"

using namespace hwforms;
namespace oracle = hwforms::testing;

namespace {

const MaterialLaw kLaw = MooneyRivlin::reference_stress_free(126.0, 252.0, 81661.0);

Eigen::VectorXd random_admissible_global(const SimplicialMesh& mesh,
                                         const DofMap& map,
                                         const std::vector<ElementBasisEval>& cache,
                                         unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Eigen::VectorXd x0 = identity_state_vector(mesh, map);
  for (double scale = 0.1;; scale *= 0.5) {
    Eigen::VectorXd x = x0;
    for (int d = 0; d < map.total(); ++d) x[d] += scale * unit(rng);
    if (global_min_J(mesh, map, cache, x) > 0.05) return x;
  }
}

}  // namespace

TEST_CASE("external load integrates dead tractions over boundary faces") {
  const SimplicialMesh mesh = oracle::cube_mesh(1);
  const DofMap map = global_dof_map(mesh);

  SUBCASE("uniform pressure on the top face splits area/3 per vertex") {
    std::vector<FaceLoad> loads;
    for (const auto& f : mesh.boundary_faces) {
      bool top = true;
      for (int v : f) top = top && mesh.vertices[v][2] > 1.0 - 1e-12;
      if (top) loads.push_back({f, Vec3(0.0, 0.0, 2.5)});
    }
    REQUIRE(loads.size() == 2);  // unit square face as two triangles
    const Eigen::VectorXd L = external_load(mesh, map, loads);

    double total = 0.0;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      CHECK(L[map.u_dof(0, v)] == 0.0);
      CHECK(L[map.u_dof(1, v)] == 0.0);
      total += L[map.u_dof(2, v)];
      if (L[map.u_dof(2, v)] != 0.0) {
        // each triangle contributes area/3 = 1/6 to each of its vertices
        const double contrib = L[map.u_dof(2, v)] / 2.5;
        CHECK((contrib == doctest::Approx(1.0 / 6.0) ||
               contrib == doctest::Approx(2.0 / 6.0)));
      }
    }
    CHECK(total == doctest::Approx(2.5 * 1.0).epsilon(1e-13));
  }
  SUBCASE("zero traction gives a zero vector") {
    const Eigen::VectorXd L =
        external_load(mesh, map, {{mesh.boundary_faces[0], Vec3::Zero()}});
    CHECK(L.norm() == 0.0);
  }
  SUBCASE("interior faces are rejected") {
    // face {1,2,3} of the two-tet mesh is interior
    const SimplicialMesh two = oracle::two_tet_mesh();
    const DofMap map2 = global_dof_map(two);
    CHECK_THROWS_AS(
        external_load(two, map2, {{std::array<int, 3>{1, 2, 3}, Vec3::UnitZ()}}),
        MeshError);
  }
}

TEST_CASE("assembled matrix equals the dense scatter oracle") {
  const SimplicialMesh mesh = oracle::two_tet_mesh();
  const DofMap map = global_dof_map(mesh);
  const auto cache = build_basis_cache(mesh, default_tet_rule());
  const Eigen::VectorXd x = random_admissible_global(mesh, map, cache, 5);

  const Eigen::VectorXd load = Eigen::VectorXd::Zero(map.total());
  const GlobalSystem sys = assemble(mesh, map, cache, kLaw, x, load, {});

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(map.total(), map.total());
  Eigen::VectorXd dense_R = Eigen::VectorXd::Zero(map.total());
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const ElementState st = gather_state(mesh, map, x, t);
    const Mat66 Ke = element_tangent(cache[t], kLaw, st);
    const Vec66 Re = element_residue(cache[t], kLaw, st);
    const auto dofs = map.element_dofs(mesh, t);
    for (int i = 0; i < 66; ++i) {
      dense_R[dofs[i]] += Re[i];
      for (int j = 0; j < 66; ++j) dense(dofs[i], dofs[j]) += Ke(i, j);
    }
  }
  CHECK((Eigen::MatrixXd(sys.K) - dense).norm() < 1e-12 * dense.norm());
  CHECK((sys.R - dense_R).norm() < 1e-12 * dense_R.norm());
}

TEST_CASE("assembled matrix is symmetric before constraint elimination") {
  const SimplicialMesh mesh = oracle::cube_mesh(2);
  const DofMap map = global_dof_map(mesh);
  const auto cache = build_basis_cache(mesh, default_tet_rule());
  const Eigen::VectorXd x = random_admissible_global(mesh, map, cache, 17);
  const GlobalSystem sys = assemble(mesh, map, cache, kLaw, x,
                                    Eigen::VectorXd::Zero(map.total()), {});
  const Eigen::MatrixXd K(sys.K);
  CHECK((K - K.transpose()).norm() < 1e-10 * K.norm());
}

TEST_CASE("dirichlet elimination solves for the prescribed increment") {
  const SimplicialMesh mesh = oracle::reference_tet();
  const DofMap map = global_dof_map(mesh);
  const auto cache = build_basis_cache(mesh, default_tet_rule());
  const Eigen::VectorXd x = identity_state_vector(mesh, map);

  DirichletSet bc;
  for (int v = 0; v < 4; ++v)
    for (int i = 0; i < 3; ++i) bc.add(map.u_dof(i, v), 0.0);
  bc.increments[0] = 0.01;  // one vertex moves

  const GlobalSystem sys = assemble(mesh, map, cache, kLaw, x,
                                    Eigen::VectorXd::Zero(map.total()), bc);
  Eigen::SparseLU<SparseMat> lu(sys.K);
  REQUIRE(lu.info() == Eigen::Success);
  const Eigen::VectorXd dx = lu.solve(-sys.R);
  CHECK(dx[bc.dofs[0]] == doctest::Approx(0.01).epsilon(1e-12));
  for (std::size_t k = 1; k < bc.size(); ++k) CHECK(dx[bc.dofs[k]] == 0.0);
}

TEST_CASE("equilibrium fixed point of the constrained identity state") {
  const SimplicialMesh mesh = oracle::reference_tet();
  const DofMap map = global_dof_map(mesh);
  const auto cache = build_basis_cache(mesh, default_tet_rule());
  const Eigen::VectorXd x = identity_state_vector(mesh, map);

  DirichletSet bc;
  for (int v = 0; v < 4; ++v)
    for (int i = 0; i < 3; ++i) bc.add(map.u_dof(i, v), 0.0);

  const GlobalSystem sys = assemble(mesh, map, cache, kLaw, x,
                                    Eigen::VectorXd::Zero(map.total()), bc);
  CHECK(sys.R.norm() < 1e-12);
  Eigen::SparseLU<SparseMat> lu(sys.K);
  REQUIRE(lu.info() == Eigen::Success);
  CHECK(lu.solve(-sys.R).norm() < 1e-12);
}

TEST_CASE("flipping a stored edge direction does not change the solution") {
  // Solve a loaded two-tet problem, then flip the shared edge {1,2} and both
  // adjacent sign entries and solve again: physical fields must agree.
  const auto solve_once = [](bool flip) {
    SimplicialMesh mesh = oracle::two_tet_mesh();
    if (flip) {
      // pick the stored edge connecting vertices 1 and 2 (shared by both)
      for (int e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.edges[e] == std::array<int, 2>{1, 2}) {
          std::swap(mesh.edges[e][0], mesh.edges[e][1]);
          for (auto& per_tet : mesh.edge_of_tet)
            for (auto& ref : per_tet)
              if (ref.edge == e) ref.sign = -ref.sign;
        }
      }
    }
    const DofMap map = global_dof_map(mesh);

    Problem problem;
    problem.mesh = mesh;
    problem.dofmap = map;
    problem.law = kLaw;
    problem.rule = default_tet_rule();
    for (int i = 0; i < 3; ++i)
      for (int v : {0, 1, 2})
        problem.dirichlet.emplace_back(map.u_dof(i, v), [](double) { return 0.0; });
    std::vector<FaceLoad> loads;
    for (const auto& f : mesh.boundary_faces) {
      bool has4 = false;
      for (int v : f) has4 = has4 || v == 4;
      if (has4) loads.push_back({f, Vec3(5.0, -3.0, 8.0)});
    }
    problem.load_unit = external_load(mesh, map, loads);
    problem.probes.emplace_back("tip", std::vector<int>{4});

    SolverConfig config;
    config.steps = 2;
    const SolutionState state = run_load_schedule(problem, config);
    return state.history.back().probe_displacements.at("tip");
  };

  const Vec3 base = solve_once(false);
  const Vec3 flipped = solve_once(true);
  CHECK((base - flipped).norm() < 1e-9 * base.norm());
}
