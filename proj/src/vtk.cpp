#include "hwforms/vtk.hpp"

#include <fstream>
#include <sstream>

namespace hwforms {

void write_vtk_deformed(const SimplicialMesh& mesh,
                        const std::vector<Vec3>& displacement,
                        const std::string& path, const std::string& title) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write VTK file " + path);
  out.precision(12);

  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Vec3 x = mesh.vertices[v] + displacement[v];
    out << x[0] << " " << x[1] << " " << x[2] << "\n";
  }
  out << "CELLS " << mesh.n_tets() << " " << 5 * mesh.n_tets() << "\n";
  for (const auto& t : mesh.tets)
    out << "4 " << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
  out << "CELL_TYPES " << mesh.n_tets() << "\n";
  for (int t = 0; t < mesh.n_tets(); ++t) out << "10\n";
  out << "POINT_DATA " << mesh.n_vertices() << "\n";
  out << "VECTORS displacement double\n";
  for (const auto& u : displacement)
    out << u[0] << " " << u[1] << " " << u[2] << "\n";
}

VtkGrid read_vtk_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open VTK file " + path);

  VtkGrid grid;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string kw;
    is >> kw;
    if (kw == "POINTS") {
      int n = 0;
      is >> n;
      grid.points.resize(n);
      for (int i = 0; i < n; ++i)
        in >> grid.points[i][0] >> grid.points[i][1] >> grid.points[i][2];
    } else if (kw == "CELLS") {
      int n = 0;
      is >> n;
      grid.tets.resize(n);
      for (int i = 0; i < n; ++i) {
        int count = 0;
        in >> count;
        if (count != 4) throw MeshError("unexpected cell arity in " + path);
        in >> grid.tets[i][0] >> grid.tets[i][1] >> grid.tets[i][2] >>
            grid.tets[i][3];
      }
    }
  }
  return grid;
}

}  // namespace hwforms
