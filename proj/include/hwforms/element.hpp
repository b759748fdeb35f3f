#ifndef HWFORMS_ELEMENT_HPP
#define HWFORMS_ELEMENT_HPP

#include <array>

#include "hwforms/basis.hpp"
#include "hwforms/materials.hpp"
#include "hwforms/types.hpp"

namespace hwforms {

/// Unknowns of one element in block order
/// [theta^1, theta^2, theta^3, t^1, t^2, t^3, u^1, u^2, u^3].
struct ElementState {
  std::array<Vec12, 3> theta;
  std::array<Vec6, 3> t;
  std::array<Vec4, 3> u;

  ElementState() {
    for (auto& v : theta) v.setZero();
    for (auto& v : t) v.setZero();
    for (auto& v : u) v.setZero();
  }

  Vec66 pack() const;
  static ElementState unpack(const Vec66& x);
};

inline constexpr int kThetaOffset = 0;
inline constexpr int kTOffset = 36;
inline constexpr int kUOffset = 54;

/// First derivative of the element contribution to the discrete functional
/// (no boundary load; loads enter the global residue separately).
Vec66 element_residue(const ElementBasisEval& basis, const MaterialLaw& law,
                      const ElementState& state);

/// Second derivative, symmetric; the t-t and u-u blocks are identically zero.
Mat66 element_tangent(const ElementBasisEval& basis, const MaterialLaw& law,
                      const ElementState& state);

/// Smallest J over the quadrature points of this element.
double element_min_J(const ElementBasisEval& basis,
                     const std::array<Vec12, 3>& theta);

}  // namespace hwforms

#endif
