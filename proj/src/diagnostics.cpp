#include "hwforms/diagnostics.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "hwforms/assembly.hpp"
#include "hwforms/solver.hpp"

namespace hwforms {

double element_functional(const ElementBasisEval& basis, const MaterialLaw& law,
                          const ElementState& state) {
  double value = 0.0;
  for (int q = 0; q < basis.n_qp(); ++q) {
    const double w = basis.qweight(q);
    Vec3 v[3], tau[3], g[3];
    for (int i = 0; i < 3; ++i) {
      v[i] = basis.Phi[q] * state.theta[i];
      tau[i] = basis.Psi[q] * state.t[i];
      g[i] = v[i] - Vec3::Unit(i) - basis.dN * state.u[i];
    }
    double pairing = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Vec3 A = v[(i + 1) % 3].cross(v[(i + 2) % 3]);
      for (int j = 0; j < 3; ++j) pairing += tau[i][j] * A.dot(g[j]);
    }
    const double I1 = v[0].squaredNorm() + v[1].squaredNorm() + v[2].squaredNorm();
    const Vec3 A0 = v[1].cross(v[2]), A1 = v[2].cross(v[0]), A2 = v[0].cross(v[1]);
    const double I2 = A0.squaredNorm() + A1.squaredNorm() + A2.squaredNorm();
    const double J = v[0].dot(A0);
    value += w * (law_energy(law, I1, I2, J) - pairing);
  }
  return value;
}

ElementState random_admissible_state(const ElementBasisEval& basis,
                                     unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // Whitney interpolant of the reference coframe as the base point; shrink
  // the perturbation until J stays clearly positive.
  SimplicialMesh ref;
  ref.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  ref.tets = {{0, 1, 2, 3}};
  ref.derive();
  const DofMap dofmap = global_dof_map(ref);
  const ElementState identity =
      gather_state(ref, dofmap, identity_state_vector(ref, dofmap), 0);

  for (double scale = 0.3;; scale *= 0.5) {
    ElementState state = identity;
    std::mt19937 draw(rng());
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < 12; ++m) state.theta[i][m] += scale * unit(draw);
      for (int m = 0; m < 6; ++m) state.t[i][m] = unit(draw);
      for (int m = 0; m < 4; ++m) state.u[i][m] = 0.3 * scale * unit(draw);
    }
    if (element_min_J(basis, state.theta) > 0.05) return state;
  }
}

namespace {

struct Reporter {
  std::ostream& out;
  bool all_ok = true;

  void check(const std::string& name, bool ok, double detail) {
    out << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << detail << ")\n";
    all_ok = all_ok && ok;
  }
};

double rel_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  const double scale = std::max(want.norm(), 1e-30);
  return (got - want).norm() / scale;
}

std::vector<std::pair<std::string, MaterialLaw>> verification_laws() {
  return {
      {"mooney-rivlin", MooneyRivlin::reference_stress_free(126.0, 252.0, 81661.0)},
      {"neo-hookean-log", NeoHookeanLog{80.194, 400889.806}},
      {"quadratic-mooney-rivlin",
       QuadraticMooneyRivlin::reference_stress_free(24.0, 84.0)},
      {"neo-hookean-j2", NeoHookeanJSquared{0.4, 1.6}},
  };
}

}  // namespace

bool run_verification(std::ostream& out) {
  Reporter report{out};

  SimplicialMesh ref;
  ref.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  ref.tets = {{0, 1, 2, 3}};
  ref.derive();
  const ElementGeometry geom = element_geometry(ref, 0);
  const ElementBasisEval basis =
      eval_basis(geom, ref.edge_signs(0), default_tet_rule());

  // quadrature: monomials lambda^alpha up to degree 4 against the closed form
  {
    const QuadratureRule rule = default_tet_rule();
    double worst = 0.0;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b)
        for (int c = 0; a + b + c <= 4; ++c) {
          const int d = 0;
          double sum = 0.0;
          for (int q = 0; q < rule.size(); ++q) {
            const Vec4& l = rule.points[q];
            sum += rule.weights[q] * std::pow(l[0], a) * std::pow(l[1], b) *
                   std::pow(l[2], c) * std::pow(l[3], d);
          }
          auto factorial = [](int n) {
            double f = 1.0;
            for (int i = 2; i <= n; ++i) f *= i;
            return f;
          };
          const double exact = factorial(a) * factorial(b) * factorial(c) *
                               factorial(d) * 6.0 /
                               factorial(a + b + c + d + 3);
          worst = std::max(worst, std::abs(sum - exact) / std::abs(exact));
        }
    report.check("quadrature degree-4 exactness", worst < 1e-13, worst);
  }

  // Whitney trace: unit line integral along the own edge, zero elsewhere
  {
    double worst = 0.0;
    const auto pairs = ref.oriented_local_edges(0);
    for (int e = 0; e < 6; ++e)
      for (int f = 0; f < 6; ++f) {
        const Vec3 a = ref.vertices[ref.tets[0][pairs[f][0]]];
        const Vec3 b = ref.vertices[ref.tets[0][pairs[f][1]]];
        const Vec3 T = b - a;
        // 2-point Gauss on the edge; the integrand is linear
        double integral = 0.0;
        for (double s : {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)}) {
          const Vec3 X = a + s * T;
          Vec4 lambda;
          lambda.tail<3>() = geom.jacobian.inverse() * (X - geom.origin);
          lambda[0] = 1.0 - lambda.tail<3>().sum();
          const int p = pairs[e][0], r = pairs[e][1];
          const Vec3 psi = lambda[p] * geom.grad_lambda.col(r) -
                           lambda[r] * geom.grad_lambda.col(p);
          integral += 0.5 * psi.dot(T);
        }
        worst = std::max(worst, std::abs(integral - (e == f ? 1.0 : 0.0)));
      }
    report.check("whitney edge-trace kronecker", worst < 1e-12, worst);
  }

  // wedge matrix skew-symmetry
  {
    const WedgeMatrix W = wedge_matrix(basis, 0);
    double worst = 0.0;
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j)
        worst = std::max(worst, (W(i, j) + W(j, i)).norm());
    report.check("wedge matrix skew-symmetry", worst == 0.0, worst);
  }

  // derivative consistency per law, centred differences with step 1e-6
  const double h = 1e-6;
  for (const auto& [name, law] : verification_laws()) {
    double worst_r = 0.0, worst_k = 0.0;
    for (unsigned seed = 0; seed < 5; ++seed) {
      const ElementState state = random_admissible_state(basis, 17 * seed + 1);
      const Vec66 x0 = state.pack();

      Vec66 fd_residue;
      for (int d = 0; d < 66; ++d) {
        Vec66 xp = x0, xm = x0;
        xp[d] += h;
        xm[d] -= h;
        fd_residue[d] = (element_functional(basis, law, ElementState::unpack(xp)) -
                         element_functional(basis, law, ElementState::unpack(xm))) /
                        (2.0 * h);
      }
      const Vec66 residue = element_residue(basis, law, state);
      worst_r = std::max(worst_r, rel_error(residue, fd_residue));

      Mat66 fd_tangent;
      for (int d = 0; d < 66; ++d) {
        Vec66 xp = x0, xm = x0;
        xp[d] += h;
        xm[d] -= h;
        fd_tangent.col(d) =
            (element_residue(basis, law, ElementState::unpack(xp)) -
             element_residue(basis, law, ElementState::unpack(xm))) /
            (2.0 * h);
      }
      const Mat66 tangent = element_tangent(basis, law, state);
      worst_k = std::max(worst_k, rel_error(tangent, fd_tangent));
    }
    report.check("residue matches d(functional), " + name, worst_r < 1e-6, worst_r);
    report.check("tangent matches d(residue), " + name, worst_k < 1e-5, worst_k);
  }

  // structural zeros of the tangent
  {
    const ElementState state = random_admissible_state(basis, 99);
    const Mat66 K =
        element_tangent(basis, verification_laws()[0].second, state);
    const double tt = K.block<18, 18>(kTOffset, kTOffset).cwiseAbs().maxCoeff();
    const double uu = K.block<12, 12>(kUOffset, kUOffset).cwiseAbs().maxCoeff();
    report.check("t-t and u-u blocks exactly zero", tt == 0.0 && uu == 0.0,
                 tt + uu);
  }

  // stress-free reference state for the d = 2a + 4b material
  {
    SimplicialMesh mesh = ref;
    const DofMap dofmap = global_dof_map(mesh);
    const ElementState state =
        gather_state(mesh, dofmap, identity_state_vector(mesh, dofmap), 0);
    const Vec66 R = element_residue(
        basis, MooneyRivlin::reference_stress_free(126.0, 252.0, 81661.0), state);
    report.check("stress-free reference residue", R.norm() < 1e-12, R.norm());
  }

  return report.all_ok;
}

}  // namespace hwforms
