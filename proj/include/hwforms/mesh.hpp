#ifndef HWFORMS_MESH_HPP
#define HWFORMS_MESH_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hwforms/types.hpp"

namespace hwforms {

/// Local edges of a tetrahedron, ordered [0,1],[0,2],[0,3],[1,2],[1,3],[2,3].
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Outward-oriented faces of a positively oriented tet, one opposite each
/// vertex; the implied normal (b-a)x(c-a) points out of the element.
inline constexpr std::array<std::array<int, 3>, 4> kOutwardFaces = {
    {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

struct EdgeRef {
  int edge = -1;
  int sign = 0;  // -1 when the local edge direction opposes the stored one
};

/// Tetrahedral approximation of the reference body. Immutable once derived;
/// safe to share across threads.
struct SimplicialMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;

  // Derived connectivity. Stored edges run from lower to higher vertex index
  // (lexicographic positive orientation); boundary faces are outward.
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> boundary_faces;
  std::vector<std::array<EdgeRef, 6>> edge_of_tet;

  std::map<std::string, std::vector<int>> vertex_marks;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_tets() const { return static_cast<int>(tets.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  /// Rebuilds edges, boundary faces and per-tet edge references, and
  /// validates element volumes. Call after filling vertices/tets.
  void derive();

  /// Local vertex pair (p,q) per local edge, ordered along the stored
  /// direction of the matching global edge. Basis evaluation uses these so
  /// that tangential traces glue across elements.
  std::array<std::array<int, 2>, 6> oriented_local_edges(int tet) const;

  std::array<int, 6> edge_signs(int tet) const;

  double total_volume() const;
};

/// Reads the ASCII tetmesh format; throws MeshError with the offending line
/// on failure.
SimplicialMesh load_mesh(const std::string& path);

void save_mesh(const SimplicialMesh& mesh, const std::string& path);

/// Affine map of one element: X(lambda) = origin + jacobian * (l1,l2,l3)
/// with jacobian columns the edge vectors from vertex 0.
struct ElementGeometry {
  Vec3 origin;
  Mat3 jacobian;
  double volume;        // det(jacobian)/6, strictly positive
  Mat3x4 grad_lambda;   // physical gradients of barycentric coordinates

  Vec3 point(const Vec4& bary) const {
    return origin + jacobian * Vec3(bary[1], bary[2], bary[3]);
  }
};

ElementGeometry element_geometry(const SimplicialMesh& mesh, int tet);

/// Global unknown numbering. Edge fields come first (2 slots per edge for
/// each deformation component, then 1 per edge for each traction component),
/// vertex displacements last:
///   theta^i slot s of edge e -> 2 E i + 2 e + s
///   t^i of edge e            -> 6 E + E i + e
///   u^i of vertex v          -> 9 E + V i + v
struct DofMap {
  int n_edges_ = 0;
  int n_vertices_ = 0;

  int theta_dof(int i, int edge, int slot) const {
    return 2 * n_edges_ * i + 2 * edge + slot;
  }
  int t_dof(int i, int edge) const { return 6 * n_edges_ + n_edges_ * i + edge; }
  int u_dof(int i, int vertex) const {
    return 9 * n_edges_ + n_vertices_ * i + vertex;
  }
  int total() const { return 9 * n_edges_ + 3 * n_vertices_; }

  /// Global indices of one element's 66 unknowns in residue order
  /// [theta^1..theta^3, t^1..t^3, u^1..u^3].
  std::array<int, 66> element_dofs(const SimplicialMesh& mesh, int tet) const;
};

DofMap global_dof_map(const SimplicialMesh& mesh);

}  // namespace hwforms

#endif
