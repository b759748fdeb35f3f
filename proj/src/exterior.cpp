#include "hwforms/exterior.hpp"

#include <cmath>
#include <vector>

namespace hwforms {

bool koszul_pullback_check(const FormField1& w, const AffineMap& L,
                           const std::vector<Vec3>& samples, double tol) {
  const Vec3 pulled_base = L.B.inverse() * (-L.c);  // L(pulled_base) == 0
  for (const Vec3& X : samples) {
    const double lhs = koszul1(w, L(X));  // L*(kappa w) at X
    const Vec3 pulled = pullback1(w, L, X);
    const double rhs = pulled.dot(X - pulled_base);  // kappa(L* w) at X
    if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs))) return false;
  }
  return true;
}

}  // namespace hwforms
