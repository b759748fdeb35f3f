#ifndef HWFORMS_EXTERIOR_HPP
#define HWFORMS_EXTERIOR_HPP

#include <functional>

#include "hwforms/types.hpp"

namespace hwforms {

// Forms carry coefficient vectors in the fixed Cartesian coframe.
// 2-forms are identified with vectors through the Euclidean Hodge star
// (dX^2^dX^3 <-> e1, cyclic), so a wedge of 1-forms is a cross product
// and the Hodge of a triple wedge is a scalar triple product.

/// a ^ b for 1-forms, returned as the vector proxy of the 2-form.
inline Vec3 wedge11(const Vec3& a, const Vec3& b) { return a.cross(b); }

/// star(a ^ b ^ c) for 1-forms.
inline double hodge3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a.cross(b).dot(c);
}

/// Affine map X -> B X + c used by the pullback utilities.
struct AffineMap {
  Mat3 B = Mat3::Identity();
  Vec3 c = Vec3::Zero();

  Vec3 operator()(const Vec3& X) const { return B * X + c; }
};

/// A 1-form with position-dependent coefficients.
using FormField1 = std::function<Vec3(const Vec3&)>;

/// Koszul contraction of a 1-form: (kappa w)(X) = w_X(X - base).
inline double koszul1(const FormField1& w, const Vec3& X,
                      const Vec3& base = Vec3::Zero()) {
  return w(X).dot(X - base);
}

/// Koszul contraction of a 2-form (vector proxy a): returns the 1-form proxy
/// a x (X - base).
inline Vec3 koszul2(const Vec3& a, const Vec3& X, const Vec3& base = Vec3::Zero()) {
  return a.cross(X - base);
}

/// Pullback of a 1-form under an affine map: (L* w)_X = B^t w(L X).
inline Vec3 pullback1(const FormField1& w, const AffineMap& L, const Vec3& X) {
  return L.B.transpose() * w(L(X));
}

/// Checks L*(kappa w) == kappa(L* w) at the given sample points.
/// The Koszul base point follows the map (base of the pulled-back side is
/// L^-1 of the original base), which is what makes the commutation exact
/// for affine and not just linear maps.
bool koszul_pullback_check(const FormField1& w, const AffineMap& L,
                           const std::vector<Vec3>& samples, double tol = 1e-12);

}  // namespace hwforms

#endif
