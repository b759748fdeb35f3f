#include "hwforms/basis.hpp"

namespace hwforms {

ElementBasisEval eval_basis(const ElementGeometry& geom,
                            const std::array<int, 6>& edge_signs,
                            const QuadratureRule& rule) {
  ElementBasisEval b;
  b.volume = geom.volume;
  b.dN = geom.grad_lambda;
  b.rule = rule;

  std::array<std::array<int, 2>, 6> pairs;
  for (int le = 0; le < 6; ++le) {
    const int i = kLocalEdges[le][0], j = kLocalEdges[le][1];
    pairs[le] = edge_signs[le] > 0 ? std::array<int, 2>{i, j}
                                   : std::array<int, 2>{j, i};
  }

  const int nq = rule.size();
  b.N.resize(nq);
  b.Phi.resize(nq);
  b.Psi.resize(nq);
  for (int q = 0; q < nq; ++q) {
    const Vec4& l = rule.points[q];
    b.N[q] = l.transpose();
    for (int le = 0; le < 6; ++le) {
      const int p = pairs[le][0], r = pairs[le][1];
      const Vec3 pq = l[p] * geom.grad_lambda.col(r);  // lambda_p d lambda_q
      const Vec3 qp = l[r] * geom.grad_lambda.col(p);
      b.Phi[q].col(2 * le) = pq;
      b.Phi[q].col(2 * le + 1) = qp;
      b.Psi[q].col(le) = pq - qp;
    }
  }
  return b;
}

WedgeMatrix wedge_matrix(const ElementBasisEval& basis, int qp) {
  WedgeMatrix W;
  const Mat3x12& Phi = basis.Phi[qp];
  for (int i = 0; i < 12; ++i) {
    W.w[12 * i + i].setZero();
    for (int j = i + 1; j < 12; ++j) {
      const Vec3 wij = Phi.col(i).cross(Phi.col(j));
      W.w[12 * i + j] = wij;
      W.w[12 * j + i] = -wij;
    }
  }
  return W;
}

}  // namespace hwforms
