#ifndef HWFORMS_VTK_HPP
#define HWFORMS_VTK_HPP

#include <string>
#include <vector>

#include "hwforms/mesh.hpp"

namespace hwforms {

/// Legacy ASCII unstructured-grid file with the mesh points displaced by u
/// and the displacement attached as point data.
void write_vtk_deformed(const SimplicialMesh& mesh,
                        const std::vector<Vec3>& displacement,
                        const std::string& path,
                        const std::string& title = "hwforms");

/// Minimal reader used to round-trip connectivity in tests: returns points
/// and tet connectivity from a file written by write_vtk_deformed.
struct VtkGrid {
  std::vector<Vec3> points;
  std::vector<std::array<int, 4>> tets;
};

VtkGrid read_vtk_grid(const std::string& path);

}  // namespace hwforms

#endif
