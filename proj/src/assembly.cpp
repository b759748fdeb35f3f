#include "hwforms/assembly.hpp"

#include <algorithm>
#include <set>

#include "hwforms/quadrature.hpp"

namespace hwforms {

Eigen::VectorXd external_load(const SimplicialMesh& mesh, const DofMap& dofmap,
                              const std::vector<FaceLoad>& loads) {
  std::set<std::array<int, 3>> boundary;
  for (auto f : mesh.boundary_faces) {
    std::sort(f.begin(), f.end());
    boundary.insert(f);
  }

  const TriQuadratureRule rule = tri_rule_3pt();
  Eigen::VectorXd L = Eigen::VectorXd::Zero(dofmap.total());
  for (const auto& load : loads) {
    std::array<int, 3> key = load.face;
    std::sort(key.begin(), key.end());
    if (!boundary.count(key))
      throw MeshError("loaded face is not on the boundary");

    const Vec3& a = mesh.vertices[load.face[0]];
    const Vec3& b = mesh.vertices[load.face[1]];
    const Vec3& c = mesh.vertices[load.face[2]];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double w = area * rule.weights[q];
      for (int lv = 0; lv < 3; ++lv) {
        const double shape = rule.points[q][lv];
        for (int i = 0; i < 3; ++i)
          L[dofmap.u_dof(i, load.face[lv])] += w * shape * load.traction[i];
      }
    }
  }
  return L;
}

Eigen::VectorXd nodal_load(const DofMap& dofmap,
                           const std::vector<std::pair<int, Vec3>>& forces) {
  Eigen::VectorXd L = Eigen::VectorXd::Zero(dofmap.total());
  for (const auto& [v, f] : forces)
    for (int i = 0; i < 3; ++i) L[dofmap.u_dof(i, v)] += f[i];
  return L;
}

std::vector<ElementBasisEval> build_basis_cache(const SimplicialMesh& mesh,
                                                const QuadratureRule& rule) {
  std::vector<ElementBasisEval> cache;
  cache.reserve(mesh.n_tets());
  for (int t = 0; t < mesh.n_tets(); ++t)
    cache.push_back(
        eval_basis(element_geometry(mesh, t), mesh.edge_signs(t), rule));
  return cache;
}

ElementState gather_state(const SimplicialMesh& mesh, const DofMap& dofmap,
                          const Eigen::VectorXd& x, int tet) {
  const auto dofs = dofmap.element_dofs(mesh, tet);
  Vec66 local;
  for (int k = 0; k < 66; ++k) local[k] = x[dofs[k]];
  return ElementState::unpack(local);
}

namespace {

struct Constraints {
  std::vector<char> mask;
  std::vector<double> incr;

  Constraints(int total, const DirichletSet& bc)
      : mask(total, 0), incr(total, 0.0) {
    for (std::size_t k = 0; k < bc.size(); ++k) {
      mask[bc.dofs[k]] = 1;
      incr[bc.dofs[k]] = bc.increments[k];
    }
  }
};

}  // namespace

GlobalSystem assemble(const SimplicialMesh& mesh, const DofMap& dofmap,
                      const std::vector<ElementBasisEval>& cache,
                      const MaterialLaw& law, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& load, const DirichletSet& bc) {
  const int total = dofmap.total();
  const Constraints con(total, bc);

  GlobalSystem sys;
  sys.R = Eigen::VectorXd::Zero(total);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_tets()) * 66 * 66 / 2);

  for (int t = 0; t < mesh.n_tets(); ++t) {
    const ElementState state = gather_state(mesh, dofmap, x, t);
    const Vec66 Re = element_residue(cache[t], law, state);
    const Mat66 Ke = element_tangent(cache[t], law, state);
    const auto dofs = dofmap.element_dofs(mesh, t);
    for (int i = 0; i < 66; ++i) {
      const int gi = dofs[i];
      if (con.mask[gi]) continue;
      sys.R[gi] += Re[i];
      for (int j = 0; j < 66; ++j) {
        const int gj = dofs[j];
        if (con.mask[gj])
          sys.R[gi] += Ke(i, j) * con.incr[gj];  // move known increment over
        else
          triplets.emplace_back(gi, gj, Ke(i, j));
      }
    }
  }

  for (int d = 0; d < total; ++d) {
    if (con.mask[d]) {
      triplets.emplace_back(d, d, 1.0);
      sys.R[d] = -con.incr[d];  // K X = -R then gives X_d = incr_d
    } else {
      sys.R[d] -= load[d];
    }
  }

  sys.K.resize(total, total);
  sys.K.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

Eigen::VectorXd assemble_residue(const SimplicialMesh& mesh,
                                 const DofMap& dofmap,
                                 const std::vector<ElementBasisEval>& cache,
                                 const MaterialLaw& law,
                                 const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& load,
                                 const DirichletSet& bc) {
  const int total = dofmap.total();
  const Constraints con(total, bc);

  Eigen::VectorXd R = Eigen::VectorXd::Zero(total);
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const ElementState state = gather_state(mesh, dofmap, x, t);
    const Vec66 Re = element_residue(cache[t], law, state);
    const auto dofs = dofmap.element_dofs(mesh, t);
    for (int i = 0; i < 66; ++i)
      if (!con.mask[dofs[i]]) R[dofs[i]] += Re[i];
  }
  for (int d = 0; d < total; ++d) {
    if (con.mask[d])
      R[d] = -con.incr[d];
    else
      R[d] -= load[d];
  }
  return R;
}

double global_min_J(const SimplicialMesh& mesh, const DofMap& dofmap,
                    const std::vector<ElementBasisEval>& cache,
                    const Eigen::VectorXd& x) {
  double min_J = std::numeric_limits<double>::max();
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const ElementState state = gather_state(mesh, dofmap, x, t);
    min_J = std::min(min_J, element_min_J(cache[t], state.theta));
  }
  return min_J;
}

}  // namespace hwforms
