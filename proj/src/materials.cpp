#include "hwforms/materials.hpp"

#include <cmath>

namespace hwforms {

namespace {

Mat3 cross_matrix(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0;
  return m;
}

}  // namespace

InvariantState invariants(const ElementBasisEval& basis, int qp,
                          const std::array<Vec12, 3>& theta) {
  const Mat3x12& Phi = basis.Phi[qp];

  std::array<Vec3, 3> v;  // pointwise deformation 1-forms
  for (int i = 0; i < 3; ++i) v[i] = Phi * theta[i];
  std::array<Vec3, 3> A;  // pulled-back area forms
  for (int i = 0; i < 3; ++i) A[i] = v[(i + 1) % 3].cross(v[(i + 2) % 3]);

  InvariantState s;
  s.I1 = v[0].squaredNorm() + v[1].squaredNorm() + v[2].squaredNorm();
  s.I2 = A[0].squaredNorm() + A[1].squaredNorm() + A[2].squaredNorm();
  s.J = v[0].dot(A[0]);

  // D(w)(m,n) = det[phi_m, phi_n, w], C(w) col m = w x phi_m.
  const Mat12 G = Phi.transpose() * Phi;
  auto D = [&](const Vec3& w) -> Mat12 {
    return -Phi.transpose() * (cross_matrix(w) * Phi);
  };
  std::array<Mat3x12, 3> Cv;
  for (int i = 0; i < 3; ++i) Cv[i] = cross_matrix(v[i]) * Phi;

  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    s.dI1[i] = 2.0 * Phi.transpose() * v[i];
    s.dJ[i] = Phi.transpose() * A[i];
    s.dI2[i] = 2.0 * Phi.transpose() * (A[i1].cross(v[i2]) + v[i1].cross(A[i2]));

    s.ddI1[i][i] = 2.0 * G;
    s.ddI1[i][i1].setZero();
    s.ddI1[i][i2].setZero();

    s.ddJ[i][i].setZero();
    s.ddJ[i][i1] = D(v[i2]);
    s.ddJ[i][i2] = -D(v[i1]);

    s.ddI2[i][i] =
        2.0 * (Cv[i2].transpose() * Cv[i2] + Cv[i1].transpose() * Cv[i1]);
    s.ddI2[i][i1] = 2.0 * (-Cv[i1].transpose() * Cv[i] + D(A[i2]));
    s.ddI2[i][i2] = 2.0 * (-Cv[i2].transpose() * Cv[i] - D(A[i1]));
  }
  return s;
}

std::string law_name(const MaterialLaw& law) {
  struct Visitor {
    std::string operator()(const MooneyRivlin&) const { return "mooney-rivlin"; }
    std::string operator()(const NeoHookeanLog&) const { return "neo-hookean-log"; }
    std::string operator()(const QuadraticMooneyRivlin&) const {
      return "quadratic-mooney-rivlin";
    }
    std::string operator()(const NeoHookeanJSquared&) const {
      return "neo-hookean-j2";
    }
  };
  return std::visit(Visitor{}, law);
}

LawDerivatives law_derivatives(const MaterialLaw& law, double I1, double I2,
                               double J) {
  if (J <= 0.0)
    throw InadmissibleState("non-positive J = " + std::to_string(J) +
                            " under " + law_name(law));
  const double logJ = std::log(J);

  LawDerivatives d;
  if (const auto* mr = std::get_if<MooneyRivlin>(&law)) {
    d.W = mr->a * (I1 - 3.0) + mr->b * (I2 - 3.0) +
          0.5 * mr->c * (J - 1.0) * (J - 1.0) - mr->d * logJ;
    d.W1 = mr->a;
    d.W2 = mr->b;
    d.WJ = mr->c * (J - 1.0) - mr->d / J;
    d.WJJ = mr->c + mr->d / (J * J);
  } else if (const auto* nh = std::get_if<NeoHookeanLog>(&law)) {
    d.W = 0.5 * nh->mu * (I1 - 3.0) - 0.5 * nh->mu * logJ +
          0.125 * nh->kappa * logJ * logJ;
    d.W1 = 0.5 * nh->mu;
    d.WJ = (-0.5 * nh->mu + 0.25 * nh->kappa * logJ) / J;
    d.WJJ = (0.5 * nh->mu + 0.25 * nh->kappa * (1.0 - logJ)) / (J * J);
  } else if (const auto* qm = std::get_if<QuadraticMooneyRivlin>(&law)) {
    d.W = 0.5 * qm->alpha * I1 * I1 + 0.5 * qm->beta * I2 * I2 -
          qm->nu_log * logJ;
    d.W1 = qm->alpha * I1;
    d.W11 = qm->alpha;
    d.W2 = qm->beta * I2;
    d.W22 = qm->beta;
    d.WJ = -qm->nu_log / J;
    d.WJJ = qm->nu_log / (J * J);
  } else {
    const auto& nj = std::get<NeoHookeanJSquared>(law);
    d.W = 0.5 * nj.mu * (I1 - 3.0) - nj.mu * logJ +
          0.25 * nj.lambda * (J * J - 1.0 - 2.0 * logJ);
    d.W1 = 0.5 * nj.mu;
    d.WJ = -nj.mu / J + 0.5 * nj.lambda * (J - 1.0 / J);
    d.WJJ = nj.mu / (J * J) + 0.5 * nj.lambda * (1.0 + 1.0 / (J * J));
  }
  return d;
}

double law_energy(const MaterialLaw& law, double I1, double I2, double J) {
  return law_derivatives(law, I1, I2, J).W;
}

EnergyDerivatives energy_and_derivatives(const MaterialLaw& law,
                                         const InvariantState& inv) {
  const LawDerivatives d = law_derivatives(law, inv.I1, inv.I2, inv.J);

  EnergyDerivatives e;
  e.W = d.W;
  for (int i = 0; i < 3; ++i)
    e.dW[i] = d.W1 * inv.dI1[i] + d.W2 * inv.dI2[i] + d.WJ * inv.dJ[i];

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Mat12& block = e.ddW[i][j];
      block = d.W1 * inv.ddI1[i][j] + d.W2 * inv.ddI2[i][j] +
              d.WJ * inv.ddJ[i][j];
      if (d.W11 != 0.0) block += d.W11 * inv.dI1[i] * inv.dI1[j].transpose();
      if (d.W22 != 0.0) block += d.W22 * inv.dI2[i] * inv.dI2[j].transpose();
      if (d.WJJ != 0.0) block += d.WJJ * inv.dJ[i] * inv.dJ[j].transpose();
      if (d.W12 != 0.0)
        block += d.W12 * (inv.dI1[i] * inv.dI2[j].transpose() +
                          inv.dI2[i] * inv.dI1[j].transpose());
      if (d.W1J != 0.0)
        block += d.W1J * (inv.dI1[i] * inv.dJ[j].transpose() +
                          inv.dJ[i] * inv.dI1[j].transpose());
      if (d.W2J != 0.0)
        block += d.W2J * (inv.dI2[i] * inv.dJ[j].transpose() +
                          inv.dJ[i] * inv.dI2[j].transpose());
    }
  return e;
}

}  // namespace hwforms
