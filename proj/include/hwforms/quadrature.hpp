#ifndef HWFORMS_QUADRATURE_HPP
#define HWFORMS_QUADRATURE_HPP

#include <vector>

#include "hwforms/types.hpp"

namespace hwforms {

/// Quadrature on the reference tetrahedron in barycentric coordinates.
/// Weights sum to 1; an integral over a physical tet is
/// volume * sum_q w_q f(x_q).
struct QuadratureRule {
  std::vector<Vec4> points;     // barycentric, components sum to 1
  std::vector<double> weights;  // sum to 1
  int degree = 0;               // polynomial degree integrated exactly

  int size() const { return static_cast<int>(points.size()); }
};

/// Centroid rule, degree 1.
QuadratureRule tet_rule_1pt();

/// Four-point symmetric rule, degree 2.
QuadratureRule tet_rule_4pt();

/// Eleven-point symmetric rule, degree 4 (one negative weight at the
/// centroid). Default rule for assembly.
QuadratureRule tet_rule_11pt();

QuadratureRule default_tet_rule();

/// Triangle rule in barycentric coordinates, weights summing to 1;
/// integral = area * sum_q w_q f(x_q). Midpoint rule, degree 2.
struct TriQuadratureRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

TriQuadratureRule tri_rule_3pt();

}  // namespace hwforms

#endif
