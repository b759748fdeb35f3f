#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>

#include "hwforms/basis.hpp"
#include "hwforms/mesh.hpp"
#include "support/oracles.hpp"

using namespace hwforms;
namespace oracle = hwforms::testing;

TEST_CASE("single tet edge derivation follows the local edge table") {
  const SimplicialMesh mesh = oracle::reference_tet();
  REQUIRE(mesh.n_edges() == 6);
  const std::array<std::array<int, 2>, 6> expected = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (int e = 0; e < 6; ++e) {
    CHECK(mesh.edges[e] == expected[e]);
    CHECK(mesh.edge_of_tet[0][e].edge == e);
    CHECK(mesh.edge_of_tet[0][e].sign == 1);
  }
  CHECK(mesh.boundary_faces.size() == 4);
}

TEST_CASE("two-tet wedge connectivity against exhaustive enumeration") {
  const SimplicialMesh mesh = oracle::two_tet_mesh();

  // oracle: enumerate all vertex pairs and triples of both tets
  std::set<std::array<int, 2>> pairs;
  std::map<std::array<int, 3>, int> triples;
  for (const auto& tet : mesh.tets) {
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        std::array<int, 2> p = {std::min(tet[a], tet[b]), std::max(tet[a], tet[b])};
        pairs.insert(p);
      }
    for (int a = 0; a < 4; ++a) {
      std::array<int, 3> f;
      int k = 0;
      for (int b = 0; b < 4; ++b)
        if (b != a) f[k++] = tet[b];
      std::sort(f.begin(), f.end());
      triples[f] += 1;
    }
  }
  CHECK(pairs.size() == 9);
  CHECK(mesh.n_edges() == 9);
  std::set<std::array<int, 2>> stored(mesh.edges.begin(), mesh.edges.end());
  CHECK(stored == pairs);

  int interior = 0;
  for (const auto& [f, count] : triples)
    if (count == 2) ++interior;
  CHECK(interior == 1);
  CHECK(mesh.boundary_faces.size() == triples.size() - interior);

  // every stored edge ascending, signs consistent with local directions
  for (const auto& e : mesh.edges) CHECK(e[0] < e[1]);
  for (int t = 0; t < mesh.n_tets(); ++t)
    for (int le = 0; le < 6; ++le) {
      const auto [e, sign] = mesh.edge_of_tet[t][le];
      const int a = mesh.tets[t][kLocalEdges[le][0]];
      const int b = mesh.tets[t][kLocalEdges[le][1]];
      CHECK((sign == 1 ? a : b) == mesh.edges[e][0]);
      CHECK((sign == 1 ? b : a) == mesh.edges[e][1]);
    }
}

TEST_CASE("element geometry") {
  SUBCASE("reference tet has unit jacobian and volume 1/6") {
    const SimplicialMesh mesh = oracle::reference_tet();
    const ElementGeometry g = element_geometry(mesh, 0);
    CHECK(g.volume == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK((g.jacobian - Mat3::Identity()).norm() == doctest::Approx(0.0));
  }
  SUBCASE("scaling by two scales volume by eight and gradients by half") {
    SimplicialMesh mesh = oracle::reference_tet();
    for (auto& v : mesh.vertices) v *= 2.0;
    mesh.derive();
    const ElementGeometry g = element_geometry(mesh, 0);
    const ElementGeometry ref = element_geometry(oracle::reference_tet(), 0);
    CHECK(g.volume == doctest::Approx(8.0 / 6.0).epsilon(1e-14));
    CHECK((g.grad_lambda - 0.5 * ref.grad_lambda).norm() < 1e-14);
  }
  SUBCASE("sheared tet keeps the partition-of-unity gradient") {
    SimplicialMesh mesh = oracle::reference_tet();
    mesh.vertices[3] = Vec3(1, 1, 1);
    mesh.derive();
    const ElementGeometry g = element_geometry(mesh, 0);
    CHECK((g.grad_lambda * Vec4::Ones()).norm() < 1e-14);
    // lambda_i(vertex j) = delta_ij through the affine map
    for (int j = 0; j < 4; ++j) {
      const Vec4 l = oracle::barycentric(g, mesh.vertices[mesh.tets[0][j]]);
      for (int i = 0; i < 4; ++i)
        CHECK(l[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
    }
  }
  SUBCASE("degenerate element is rejected") {
    SimplicialMesh mesh;
    mesh.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)};
    mesh.tets = {{0, 1, 2, 3}};
    CHECK_THROWS_AS(mesh.derive(), MeshError);
  }
}

TEST_CASE("mesh file parsing") {
  const std::string path = "test_mesh_io.tetmesh";
  SUBCASE("round trip") {
    const SimplicialMesh mesh = oracle::two_tet_mesh();
    save_mesh(mesh, path);
    const SimplicialMesh back = load_mesh(path);
    CHECK(back.n_vertices() == mesh.n_vertices());
    CHECK(back.tets == mesh.tets);
    CHECK(back.edges == mesh.edges);
  }
  SUBCASE("marker block") {
    std::ofstream out(path);
    out << "tetmesh 1\n4 1 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 2 3 4\n"
        << "mark root 2\n1\n2\n";
    out.close();
    const SimplicialMesh mesh = load_mesh(path);
    REQUIRE(mesh.vertex_marks.count("root"));
    CHECK(mesh.vertex_marks.at("root") == std::vector<int>{0, 1});
  }
  SUBCASE("bad header names the line") {
    std::ofstream out(path);
    out << "trimesh 1\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_mesh(path),
                         doctest::Contains(":1:"), MeshError);
  }
  SUBCASE("dangling vertex index names the line") {
    std::ofstream out(path);
    out << "tetmesh 1\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 2 3 7\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_mesh(path),
                         doctest::Contains(":7:"), MeshError);
  }
  SUBCASE("negative volume is rejected") {
    std::ofstream out(path);
    out << "tetmesh 1\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n2 1 3 4\n";
    out.close();
    CHECK_THROWS_AS(load_mesh(path), MeshError);
  }
}

TEST_CASE("global dof map") {
  SUBCASE("single tet carries 66 unknowns, 4/6/12 per field") {
    const SimplicialMesh mesh = oracle::reference_tet();
    const DofMap map = global_dof_map(mesh);
    CHECK(map.total() == 66);
    CHECK(mesh.n_vertices() == 4);           // P1 scalar slots per component
    CHECK(mesh.n_edges() == 6);              // Whitney slots per component
    CHECK(2 * mesh.n_edges() == 12);         // full 1-form slots per component
  }
  SUBCASE("two tets: 96 unknowns by entity enumeration") {
    const SimplicialMesh mesh = oracle::two_tet_mesh();
    const DofMap map = global_dof_map(mesh);
    CHECK(map.total() == 9 * 9 + 3 * 5);
    // oracle: enumerate (entity, field, slot) triples
    int count = 0;
    count += mesh.n_edges() * 3 * 2;  // theta
    count += mesh.n_edges() * 3;      // t
    count += mesh.n_vertices() * 3;   // u
    CHECK(map.total() == count);
  }
  SUBCASE("dof numbering is a bijection") {
    const SimplicialMesh mesh = oracle::two_tet_mesh();
    const DofMap map = global_dof_map(mesh);
    std::set<int> seen;
    for (int i = 0; i < 3; ++i) {
      for (int e = 0; e < mesh.n_edges(); ++e) {
        seen.insert(map.theta_dof(i, e, 0));
        seen.insert(map.theta_dof(i, e, 1));
        seen.insert(map.t_dof(i, e));
      }
      for (int v = 0; v < mesh.n_vertices(); ++v) seen.insert(map.u_dof(i, v));
    }
    CHECK(static_cast<int>(seen.size()) == map.total());
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == map.total() - 1);
  }
  SUBCASE("element gather hits the right globals") {
    const SimplicialMesh mesh = oracle::two_tet_mesh();
    const DofMap map = global_dof_map(mesh);
    for (int t = 0; t < 2; ++t) {
      const auto dofs = map.element_dofs(mesh, t);
      std::set<int> unique(dofs.begin(), dofs.end());
      CHECK(unique.size() == 66);
      for (int d : dofs) CHECK(d < map.total());
    }
  }
}

TEST_CASE("volume sums match the divergence-theorem oracle") {
  SimplicialMesh mesh = oracle::cube_mesh(2);
  // distort the cube to a general positive-volume configuration
  for (auto& v : mesh.vertices) {
    const Vec3 x = v;
    v[0] += 0.08 * std::sin(2.0 * x[1]) + 0.03 * x[2] * x[2];
    v[1] += 0.05 * x[0] * x[2];
    v[2] += 0.04 * std::cos(x[0] + x[1]) * 0.5;
  }
  mesh.derive();

  double by_faces = 0.0;
  for (const auto& f : mesh.boundary_faces) {
    const Vec3 a = mesh.vertices[f[0]], b = mesh.vertices[f[1]],
               c = mesh.vertices[f[2]];
    const Vec3 n2 = (b - a).cross(c - a);  // outward, twice the area
    by_faces += (a + b + c).dot(n2) / 18.0;
  }
  CHECK(mesh.total_volume() ==
        doctest::Approx(by_faces).epsilon(1e-12));
}

TEST_CASE("tangential traces glue across a shared edge") {
  const SimplicialMesh mesh = oracle::two_tet_mesh();
  const DofMap map = global_dof_map(mesh);
  const QuadratureRule rule = tet_rule_1pt();

  // put random coefficients on every theta and t slot of the shared edges
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd x(map.total());
  for (int d = 0; d < map.total(); ++d) x[d] = unit(rng);

  // edges of the shared face {1,2,3} appear in both tets
  for (int e = 0; e < mesh.n_edges(); ++e) {
    int in_t0 = -1, in_t1 = -1;
    for (int le = 0; le < 6; ++le) {
      if (mesh.edge_of_tet[0][le].edge == e) in_t0 = le;
      if (mesh.edge_of_tet[1][le].edge == e) in_t1 = le;
    }
    if (in_t0 < 0 || in_t1 < 0) continue;

    const Vec3 A = mesh.vertices[mesh.edges[e][0]];
    const Vec3 B = mesh.vertices[mesh.edges[e][1]];
    const Vec3 T = B - A;
    for (double s : {0.2, 0.5, 0.8}) {
      const Vec3 X = A + s * T;
      double trace[2][4];  // per tet: theta^i traces and whitney trace
      for (int t : {0, 1}) {
        const ElementGeometry geom = element_geometry(mesh, t);
        const Vec4 l = oracle::barycentric(geom, X);
        QuadratureRule pt;
        pt.points = {l};
        pt.weights = {1.0};
        const ElementBasisEval basis = eval_basis(geom, mesh.edge_signs(t), pt);
        const ElementState st = gather_state(mesh, map, x, t);
        for (int i = 0; i < 3; ++i)
          trace[t == 1][i] = (basis.Phi[0] * st.theta[i]).dot(T);
        trace[t == 1][3] = (basis.Psi[0] * st.t[0]).dot(T);
      }
      for (int c = 0; c < 4; ++c)
        CHECK(trace[0][c] == doctest::Approx(trace[1][c]).epsilon(1e-12));
    }
  }
}
