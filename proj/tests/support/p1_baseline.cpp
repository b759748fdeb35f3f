#include "support/p1_baseline.hpp"

#include <Eigen/SparseLU>

#include <cmath>

namespace hwforms::testing {

namespace {

struct LawAtF {
  double W1, W2, WJ;
  double W11, W22, WJJ, W12, W1J, W2J;
  Mat3 F, C, cof;
  double I1, I2, J;

  LawAtF(const MaterialLaw& law, const Mat3& F_in) : F(F_in) {
    C = F.transpose() * F;
    J = F.determinant();
    cof = J * F.inverse().transpose();
    I1 = C.trace();
    I2 = cof.squaredNorm();
    const LawDerivatives d = law_derivatives(law, I1, I2, J);
    W1 = d.W1;
    W2 = d.W2;
    WJ = d.WJ;
    W11 = d.W11;
    W22 = d.W22;
    WJJ = d.WJJ;
    W12 = d.W12;
    W1J = d.W1J;
    W2J = d.W2J;
  }

  Mat3 piola() const {
    return 2.0 * W1 * F + 2.0 * W2 * (I1 * F - F * C) + WJ * cof;
  }

  // Directional derivative of the Piola stress.
  Mat3 dpiola(const Mat3& H) const {
    const double dI1 = 2.0 * F.cwiseProduct(H).sum();
    const double dI2 = 2.0 * (I1 * F - F * C).cwiseProduct(H).sum();
    const double dJ = cof.cwiseProduct(H).sum();
    const double dW1 = W11 * dI1 + W12 * dI2 + W1J * dJ;
    const double dW2 = W12 * dI1 + W22 * dI2 + W2J * dJ;
    const double dWJ = W1J * dI1 + W2J * dI2 + WJJ * dJ;
    const Mat3 dC = H.transpose() * F + F.transpose() * H;
    const Mat3 dcof = dJ * cof / J - cof * H.transpose() * cof / J;
    return 2.0 * dW1 * F + 2.0 * W1 * H +
           2.0 * dW2 * (I1 * F - F * C) +
           2.0 * W2 * (dI1 * F + I1 * H - H * C - F * dC) + dWJ * cof +
           WJ * dcof;
  }
};

}  // namespace

P1Result solve_p1_displacement(const Problem& problem, int steps,
                               double tol_rel, int max_iters) {
  const SimplicialMesh& mesh = problem.mesh;
  const int nv = mesh.n_vertices();
  const int total = 3 * nv;
  const auto dof = [nv](int i, int v) { return i * nv + v; };

  // Remap constraints and loads from the mixed numbering (u block last).
  const int u_base = problem.dofmap.u_dof(0, 0);
  std::vector<std::pair<int, std::function<double(double)>>> dirichlet;
  for (const auto& [mixed_dof, fn] : problem.dirichlet) {
    const int rel = mixed_dof - u_base;
    dirichlet.emplace_back(dof(rel / nv, rel % nv), fn);
  }
  Eigen::VectorXd load = Eigen::VectorXd::Zero(total);
  for (int i = 0; i < 3; ++i)
    for (int v = 0; v < nv; ++v)
      load[dof(i, v)] = problem.load_unit[problem.dofmap.u_dof(i, v)];

  std::vector<ElementGeometry> geom;
  for (int t = 0; t < mesh.n_tets(); ++t)
    geom.push_back(element_geometry(mesh, t));

  P1Result result;
  result.u = Eigen::VectorXd::Zero(total);

  const auto element_F = [&](int t, const Eigen::VectorXd& u) {
    Mat3 F = Mat3::Identity();
    for (int a = 0; a < 4; ++a) {
      Vec3 ua;
      for (int i = 0; i < 3; ++i) ua[i] = u[dof(i, mesh.tets[t][a])];
      F += ua * geom[t].grad_lambda.col(a).transpose();
    }
    return F;
  };
  const auto min_J = [&](const Eigen::VectorXd& u) {
    double m = std::numeric_limits<double>::max();
    for (int t = 0; t < mesh.n_tets(); ++t)
      m = std::min(m, element_F(t, u).determinant());
    return m;
  };

  Eigen::SparseLU<SparseMat> lu;
  for (int step = 1; step <= steps; ++step) {
    const double lf = static_cast<double>(step) / steps;
    double tol = 0.0;
    for (int it = 0;; ++it) {
      if (it > max_iters)
        throw SolveError("p1 baseline: no convergence at load factor " +
                         std::to_string(lf));

      std::vector<char> mask(total, 0);
      std::vector<double> incr(total, 0.0);
      for (const auto& [d, fn] : dirichlet) {
        mask[d] = 1;
        incr[d] = fn(lf) - result.u[d];
      }

      Eigen::VectorXd R = Eigen::VectorXd::Zero(total);
      std::vector<Eigen::Triplet<double>> trips;
      for (int t = 0; t < mesh.n_tets(); ++t) {
        const LawAtF at(problem.law, element_F(t, result.u));
        const double V = geom[t].volume;
        const Mat3 P = at.piola();
        const Mat3x4& dN = geom[t].grad_lambda;

        Eigen::Matrix<double, 12, 1> Re;
        for (int a = 0; a < 4; ++a)
          Re.segment<3>(3 * a) = V * (P * dN.col(a));

        Eigen::Matrix<double, 12, 12> Ke;
        for (int b = 0; b < 4; ++b)
          for (int k = 0; k < 3; ++k) {
            const Mat3 dP = at.dpiola(Vec3::Unit(k) * dN.col(b).transpose());
            for (int a = 0; a < 4; ++a)
              Ke.block<3, 1>(3 * a, 3 * b + k) = V * (dP * dN.col(a));
          }

        std::array<int, 12> gdof;
        for (int a = 0; a < 4; ++a)
          for (int i = 0; i < 3; ++i) gdof[3 * a + i] = dof(i, mesh.tets[t][a]);
        for (int i = 0; i < 12; ++i) {
          if (mask[gdof[i]]) continue;
          R[gdof[i]] += Re[i];
          for (int j = 0; j < 12; ++j) {
            if (mask[gdof[j]])
              R[gdof[i]] += Ke(i, j) * incr[gdof[j]];
            else
              trips.emplace_back(gdof[i], gdof[j], Ke(i, j));
          }
        }
      }
      for (int d = 0; d < total; ++d) {
        if (mask[d])
          trips.emplace_back(d, d, 1.0), R[d] = -incr[d];
        else
          R[d] -= lf * load[d];
      }

      const double rnorm = R.norm();
      if (it == 0) tol = std::max(tol_rel * rnorm, 1e-12);
      if (rnorm < tol) break;

      SparseMat K(total, total);
      K.setFromTriplets(trips.begin(), trips.end());
      lu.compute(K);
      if (lu.info() != Eigen::Success)
        throw SolveError("p1 baseline: singular tangent");
      const Eigen::VectorXd dx = lu.solve(-R);

      double alpha = 1.0;
      for (int halvings = 0; halvings < 10; ++halvings, alpha *= 0.5)
        if (min_J(result.u + alpha * dx) > 0.0) break;
      result.u += alpha * dx;
      ++result.newton_iterations_total;
    }
  }
  return result;
}

Vec3 p1_probe(const SimplicialMesh& mesh, const Eigen::VectorXd& u,
              const std::vector<int>& vertices) {
  const int nv = mesh.n_vertices();
  Vec3 out = Vec3::Zero();
  for (int v : vertices)
    for (int i = 0; i < 3; ++i) out[i] += u[i * nv + v];
  return out / static_cast<double>(vertices.size());
}

}  // namespace hwforms::testing
