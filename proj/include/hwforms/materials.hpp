#ifndef HWFORMS_MATERIALS_HPP
#define HWFORMS_MATERIALS_HPP

#include <array>
#include <string>
#include <variant>

#include "hwforms/basis.hpp"
#include "hwforms/types.hpp"

namespace hwforms {

/// Invariants of the discrete right Cauchy-Green tensor at one quadrature
/// point, with first and second derivatives in the deformation DoFs.
/// Block i of a first derivative pairs with theta^i; block (i,j) of a second
/// derivative has row index in theta^i and column index in theta^j.
struct InvariantState {
  double I1 = 0.0, I2 = 0.0, J = 0.0;
  std::array<Vec12, 3> dI1, dI2, dJ;
  std::array<std::array<Mat12, 3>, 3> ddI1, ddI2, ddJ;
};

InvariantState invariants(const ElementBasisEval& basis, int qp,
                          const std::array<Vec12, 3>& theta);

// Stored-energy laws. All four contain a log(J) term, so J > 0 is required
// wherever energy derivatives are evaluated.

struct MooneyRivlin {
  double a, b, c, d;

  /// Stress-free at the reference state when d = 2a + 4b.
  static MooneyRivlin reference_stress_free(double a, double b, double c) {
    return {a, b, c, 2.0 * a + 4.0 * b};
  }
};

struct NeoHookeanLog {
  double mu, kappa;
};

struct QuadraticMooneyRivlin {
  double alpha, beta;
  double nu_log;  // 6 alpha + 12 beta makes the reference state stress-free

  static QuadraticMooneyRivlin reference_stress_free(double alpha, double beta) {
    return {alpha, beta, 6.0 * alpha + 12.0 * beta};
  }
};

struct NeoHookeanJSquared {
  double mu, lambda;
};

using MaterialLaw = std::variant<MooneyRivlin, NeoHookeanLog,
                                 QuadraticMooneyRivlin, NeoHookeanJSquared>;

std::string law_name(const MaterialLaw& law);

/// Value and partial derivatives of W in the invariants.
struct LawDerivatives {
  double W = 0.0;
  double W1 = 0.0, W2 = 0.0, WJ = 0.0;
  double W11 = 0.0, W22 = 0.0, WJJ = 0.0;
  double W12 = 0.0, W1J = 0.0, W2J = 0.0;
};

/// Throws InadmissibleState when J <= 0.
LawDerivatives law_derivatives(const MaterialLaw& law, double I1, double I2,
                               double J);

double law_energy(const MaterialLaw& law, double I1, double I2, double J);

/// Chain-rule combination of the law with the invariant derivative arrays.
struct EnergyDerivatives {
  double W = 0.0;
  std::array<Vec12, 3> dW;
  std::array<std::array<Mat12, 3>, 3> ddW;  // block (i,j) = transpose of (j,i)
};

EnergyDerivatives energy_and_derivatives(const MaterialLaw& law,
                                         const InvariantState& inv);

}  // namespace hwforms

#endif
