#ifndef HWFORMS_ASSEMBLY_HPP
#define HWFORMS_ASSEMBLY_HPP

#include <vector>

#include "hwforms/element.hpp"
#include "hwforms/mesh.hpp"
#include "hwforms/types.hpp"

namespace hwforms {

/// Tangent and residue of the full system. K is already reduced for the
/// Dirichlet set: constrained rows and columns are zeroed with a unit
/// diagonal, and R is arranged so that solving K X = -R yields exactly the
/// prescribed increment on constrained unknowns.
struct GlobalSystem {
  SparseMat K;
  Eigen::VectorXd R;
};

struct DirichletSet {
  std::vector<int> dofs;
  std::vector<double> increments;  // aligned with dofs

  void add(int dof, double increment) {
    dofs.push_back(dof);
    increments.push_back(increment);
  }
  std::size_t size() const { return dofs.size(); }
};

/// Dead-load traction on a reference boundary face (force per unit area).
struct FaceLoad {
  std::array<int, 3> face;
  Vec3 traction;
};

/// Integrates the boundary work pairing against the vertex shape functions;
/// contributes only to displacement unknowns. Throws MeshError if a face is
/// not on the boundary.
Eigen::VectorXd external_load(const SimplicialMesh& mesh, const DofMap& dofmap,
                              const std::vector<FaceLoad>& loads);

/// Concentrated vertex forces, e.g. a resultant distributed over a node set.
Eigen::VectorXd nodal_load(const DofMap& dofmap,
                           const std::vector<std::pair<int, Vec3>>& forces);

/// Per-element shape evaluations; geometry is fixed, so this is computed once
/// per mesh and shared by every assembly.
std::vector<ElementBasisEval> build_basis_cache(const SimplicialMesh& mesh,
                                                const QuadratureRule& rule);

ElementState gather_state(const SimplicialMesh& mesh, const DofMap& dofmap,
                          const Eigen::VectorXd& x, int tet);

/// Elements are summed in ascending order; the load enters with a minus sign.
GlobalSystem assemble(const SimplicialMesh& mesh, const DofMap& dofmap,
                      const std::vector<ElementBasisEval>& cache,
                      const MaterialLaw& law, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& load, const DirichletSet& bc);

/// Residue only, same Dirichlet treatment; used by the step safeguard.
Eigen::VectorXd assemble_residue(const SimplicialMesh& mesh,
                                 const DofMap& dofmap,
                                 const std::vector<ElementBasisEval>& cache,
                                 const MaterialLaw& law,
                                 const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& load,
                                 const DirichletSet& bc);

/// Smallest J over all quadrature points of the mesh.
double global_min_J(const SimplicialMesh& mesh, const DofMap& dofmap,
                    const std::vector<ElementBasisEval>& cache,
                    const Eigen::VectorXd& x);

}  // namespace hwforms

#endif
