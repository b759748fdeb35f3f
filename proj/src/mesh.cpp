#include "hwforms/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace hwforms {

namespace {

std::string describe_tet(int t, const std::array<int, 4>& tet) {
  std::ostringstream os;
  os << "tet " << t << " [" << tet[0] + 1 << " " << tet[1] + 1 << " "
     << tet[2] + 1 << " " << tet[3] + 1 << "]";
  return os.str();
}

}  // namespace

void SimplicialMesh::derive() {
  edges.clear();
  boundary_faces.clear();
  edge_of_tet.clear();

  const int nv = n_vertices();
  for (int t = 0; t < n_tets(); ++t) {
    for (int v : tets[t]) {
      if (v < 0 || v >= nv)
        throw MeshError("dangling vertex index in " + describe_tet(t, tets[t]));
    }
    const Mat3 J = (Mat3() << vertices[tets[t][1]] - vertices[tets[t][0]],
                    vertices[tets[t][2]] - vertices[tets[t][0]],
                    vertices[tets[t][3]] - vertices[tets[t][0]])
                       .finished();
    if (J.determinant() <= 0.0)
      throw MeshError("non-positive volume in " + describe_tet(t, tets[t]));
  }

  std::map<std::array<int, 2>, int> edge_ids;
  edge_of_tet.resize(tets.size());
  for (int t = 0; t < n_tets(); ++t) {
    for (int le = 0; le < 6; ++le) {
      int a = tets[t][kLocalEdges[le][0]];
      int b = tets[t][kLocalEdges[le][1]];
      const std::array<int, 2> key = {std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_ids.try_emplace(key, n_edges());
      if (inserted) edges.push_back(key);
      const auto& stored = edges[it->second];
      edge_of_tet[t][le] = {it->second, (stored[0] == a && stored[1] == b) ? 1 : -1};
    }
  }

  // Faces keyed by sorted vertex triple; each must appear once (boundary)
  // or twice (interior).
  std::map<std::array<int, 3>, std::pair<int, std::array<int, 3>>> face_count;
  for (int t = 0; t < n_tets(); ++t) {
    for (const auto& f : kOutwardFaces) {
      std::array<int, 3> tri = {tets[t][f[0]], tets[t][f[1]], tets[t][f[2]]};
      std::array<int, 3> key = tri;
      std::sort(key.begin(), key.end());
      auto [it, inserted] = face_count.try_emplace(key, std::make_pair(0, tri));
      it->second.first += 1;
    }
  }
  for (const auto& [key, entry] : face_count) {
    if (entry.first > 2)
      throw MeshError("face shared by more than two tets");
    if (entry.first == 1) boundary_faces.push_back(entry.second);
  }
}

std::array<std::array<int, 2>, 6> SimplicialMesh::oriented_local_edges(int tet) const {
  std::array<std::array<int, 2>, 6> out;
  for (int le = 0; le < 6; ++le) {
    const auto [i, j] = std::pair(kLocalEdges[le][0], kLocalEdges[le][1]);
    out[le] = edge_of_tet[tet][le].sign > 0 ? std::array<int, 2>{i, j}
                                            : std::array<int, 2>{j, i};
  }
  return out;
}

std::array<int, 6> SimplicialMesh::edge_signs(int tet) const {
  std::array<int, 6> s;
  for (int le = 0; le < 6; ++le) s[le] = edge_of_tet[tet][le].sign;
  return s;
}

double SimplicialMesh::total_volume() const {
  double v = 0.0;
  for (int t = 0; t < n_tets(); ++t) v += element_geometry(*this, t).volume;
  return v;
}

namespace {

std::istream& next_data_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos != std::string::npos && line[pos] != '#') return in;
  }
  return in;
}

[[noreturn]] void parse_fail(const std::string& path, int lineno, const std::string& msg) {
  throw MeshError(path + ":" + std::to_string(lineno) + ": " + msg);
}

}  // namespace

SimplicialMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path);

  std::string line;
  int lineno = 0;

  if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "empty file");
  {
    std::istringstream is(line);
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "tetmesh" || version != 1)
      parse_fail(path, lineno, "expected header 'tetmesh 1'");
  }

  int nv = 0, nt = 0, nmarks = 0;
  if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "missing counts");
  {
    std::istringstream is(line);
    if (!(is >> nv >> nt >> nmarks) || nv <= 0 || nt <= 0)
      parse_fail(path, lineno, "expected '<nv> <nt> <nbmarks>'");
  }

  SimplicialMesh mesh;
  mesh.vertices.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "missing vertex line");
    std::istringstream is(line);
    Vec3 x;
    if (!(is >> x[0] >> x[1] >> x[2]))
      parse_fail(path, lineno, "bad vertex coordinates");
    mesh.vertices.push_back(x);
  }

  mesh.tets.reserve(nt);
  for (int i = 0; i < nt; ++i) {
    if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "missing tet line");
    std::istringstream is(line);
    std::array<int, 4> tet;  // 1-based in the file
    if (!(is >> tet[0] >> tet[1] >> tet[2] >> tet[3]))
      parse_fail(path, lineno, "bad tet connectivity");
    for (int& v : tet) {
      if (v < 1 || v > nv)
        parse_fail(path, lineno, "vertex index " + std::to_string(v) + " out of range");
      v -= 1;
    }
    mesh.tets.push_back(tet);
  }

  for (int m = 0; m < nmarks; ++m) {
    if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "missing mark block");
    std::istringstream is(line);
    std::string kw, name;
    int count = 0;
    if (!(is >> kw >> name >> count) || kw != "mark")
      parse_fail(path, lineno, "expected 'mark <name> <count>'");
    auto& ids = mesh.vertex_marks[name];
    for (int i = 0; i < count; ++i) {
      if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "missing mark id");
      std::istringstream isl(line);
      int id = 0;
      if (!(isl >> id) || id < 1 || id > nv)
        parse_fail(path, lineno, "bad vertex id in mark '" + name + "'");
      ids.push_back(id - 1);
    }
  }

  mesh.derive();
  return mesh;
}

void save_mesh(const SimplicialMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file " + path);
  out << "tetmesh 1\n";
  out << mesh.n_vertices() << " " << mesh.n_tets() << " "
      << mesh.vertex_marks.size() << "\n";
  out.precision(17);
  for (const auto& v : mesh.vertices)
    out << v[0] << " " << v[1] << " " << v[2] << "\n";
  for (const auto& t : mesh.tets)
    out << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << " " << t[3] + 1 << "\n";
  for (const auto& [name, ids] : mesh.vertex_marks) {
    out << "mark " << name << " " << ids.size() << "\n";
    for (int id : ids) out << id + 1 << "\n";
  }
}

ElementGeometry element_geometry(const SimplicialMesh& mesh, int tet) {
  const auto& vt = mesh.tets[tet];
  ElementGeometry g;
  g.origin = mesh.vertices[vt[0]];
  g.jacobian.col(0) = mesh.vertices[vt[1]] - g.origin;
  g.jacobian.col(1) = mesh.vertices[vt[2]] - g.origin;
  g.jacobian.col(2) = mesh.vertices[vt[3]] - g.origin;
  const double det = g.jacobian.determinant();
  if (det <= 0.0)
    throw MeshError("degenerate element: " + describe_tet(tet, vt));
  g.volume = det / 6.0;
  const Mat3 Jinv = g.jacobian.inverse();
  g.grad_lambda.block<3, 3>(0, 1) = Jinv.transpose();
  g.grad_lambda.col(0) = -(g.grad_lambda.col(1) + g.grad_lambda.col(2) +
                           g.grad_lambda.col(3));
  return g;
}

std::array<int, 66> DofMap::element_dofs(const SimplicialMesh& mesh, int tet) const {
  std::array<int, 66> dofs;
  int k = 0;
  for (int i = 0; i < 3; ++i)
    for (int le = 0; le < 6; ++le) {
      const int e = mesh.edge_of_tet[tet][le].edge;
      dofs[k++] = theta_dof(i, e, 0);
      dofs[k++] = theta_dof(i, e, 1);
    }
  for (int i = 0; i < 3; ++i)
    for (int le = 0; le < 6; ++le)
      dofs[k++] = t_dof(i, mesh.edge_of_tet[tet][le].edge);
  for (int i = 0; i < 3; ++i)
    for (int lv = 0; lv < 4; ++lv) dofs[k++] = u_dof(i, mesh.tets[tet][lv]);
  return dofs;
}

DofMap global_dof_map(const SimplicialMesh& mesh) {
  DofMap map;
  map.n_edges_ = mesh.n_edges();
  map.n_vertices_ = mesh.n_vertices();
  return map;
}

}  // namespace hwforms
