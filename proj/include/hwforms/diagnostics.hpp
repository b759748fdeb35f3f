#ifndef HWFORMS_DIAGNOSTICS_HPP
#define HWFORMS_DIAGNOSTICS_HPP

#include <iosfwd>

#include "hwforms/element.hpp"

namespace hwforms {

/// Direct quadrature evaluation of the element part of the discrete
/// functional (energy minus the traction pairing with the compatibility gap).
double element_functional(const ElementBasisEval& basis, const MaterialLaw& law,
                          const ElementState& state);

/// Random element state on the given basis with J bounded away from zero at
/// every quadrature point. Deterministic in the seed.
ElementState random_admissible_state(const ElementBasisEval& basis,
                                     unsigned seed);

/// Self-check suites exercised by `hwforms verify`: derivative consistency
/// against centred finite differences, the structural zero blocks, the
/// Whitney trace property and quadrature exactness. Prints one line per
/// check; returns false if anything failed.
bool run_verification(std::ostream& out);

}  // namespace hwforms

#endif
