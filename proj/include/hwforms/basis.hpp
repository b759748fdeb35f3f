#ifndef HWFORMS_BASIS_HPP
#define HWFORMS_BASIS_HPP

#include <array>
#include <vector>

#include "hwforms/mesh.hpp"
#include "hwforms/quadrature.hpp"
#include "hwforms/types.hpp"

namespace hwforms {

/// Shape matrices of one element at the points of a quadrature rule.
///
/// Columns of Phi are the twelve 1-form basis fields lambda_p d lambda_q,
/// lambda_q d lambda_p per edge; columns of Psi are the Whitney fields
/// lambda_p d lambda_q - lambda_q d lambda_p. The pair (p,q) follows the
/// stored direction of the global edge, which is how orientation is applied:
/// traces then glue across elements without extra sign bookkeeping in the
/// scatter.
struct ElementBasisEval {
  double volume = 0.0;
  Mat3x4 dN;                    // constant gradients of the vertex shapes
  std::vector<RowVec4> N;       // per quadrature point
  std::vector<Mat3x12> Phi;
  std::vector<Mat3x6> Psi;
  QuadratureRule rule;

  int n_qp() const { return static_cast<int>(N.size()); }
  double qweight(int q) const { return volume * rule.weights[q]; }
};

ElementBasisEval eval_basis(const ElementGeometry& geom,
                            const std::array<int, 6>& edge_signs,
                            const QuadratureRule& rule);

/// Pairwise wedges of the Phi columns at one quadrature point:
/// entry(i,j) is the vector proxy of phi^i ^ phi^j. Skew-symmetric.
struct WedgeMatrix {
  std::array<Vec3, 144> w;

  const Vec3& operator()(int i, int j) const { return w[12 * i + j]; }
};

WedgeMatrix wedge_matrix(const ElementBasisEval& basis, int qp);

}  // namespace hwforms

#endif
