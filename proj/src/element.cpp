#include "hwforms/element.hpp"

namespace hwforms {

Vec66 ElementState::pack() const {
  Vec66 x;
  for (int i = 0; i < 3; ++i) {
    x.segment<12>(kThetaOffset + 12 * i) = theta[i];
    x.segment<6>(kTOffset + 6 * i) = t[i];
    x.segment<4>(kUOffset + 4 * i) = u[i];
  }
  return x;
}

ElementState ElementState::unpack(const Vec66& x) {
  ElementState s;
  for (int i = 0; i < 3; ++i) {
    s.theta[i] = x.segment<12>(kThetaOffset + 12 * i);
    s.t[i] = x.segment<6>(kTOffset + 6 * i);
    s.u[i] = x.segment<4>(kUOffset + 4 * i);
  }
  return s;
}

namespace {

Mat3 cross_matrix(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0;
  return m;
}

// Pointwise quantities shared by the residue and tangent kernels.
struct PointState {
  Vec3 v[3];    // theta^i at the point
  Vec3 tau[3];  // t^i at the point
  Vec3 dphi[3]; // d(X^j + u^j)
  Vec3 g[3];    // compatibility gap theta^j - dphi^j
  Vec3 A[3];    // pulled-back area forms
  double trace; // tau^i_i

  PointState(const ElementBasisEval& basis, int qp, const ElementState& s) {
    const Mat3x12& Phi = basis.Phi[qp];
    const Mat3x6& Psi = basis.Psi[qp];
    for (int i = 0; i < 3; ++i) {
      v[i] = Phi * s.theta[i];
      tau[i] = Psi * s.t[i];
      dphi[i] = Vec3::Unit(i) + basis.dN * s.u[i];
      g[i] = v[i] - dphi[i];
    }
    for (int i = 0; i < 3; ++i) A[i] = v[(i + 1) % 3].cross(v[(i + 2) % 3]);
    trace = tau[0][0] + tau[1][1] + tau[2][2];
  }
};

}  // namespace

Vec66 element_residue(const ElementBasisEval& basis, const MaterialLaw& law,
                      const ElementState& state) {
  Vec66 R = Vec66::Zero();
  for (int q = 0; q < basis.n_qp(); ++q) {
    const double w = basis.qweight(q);
    const Mat3x12& Phi = basis.Phi[q];
    const Mat3x6& Psi = basis.Psi[q];
    const PointState p(basis, q, state);

    const InvariantState inv = invariants(basis, q, state.theta);
    const EnergyDerivatives en = energy_and_derivatives(law, inv);

    for (int k = 0; k < 3; ++k) {
      const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
      // s1, s2 weight the gap vectors by the tractions that couple to the
      // area forms touched by theta^k; s3 collects the direct A_i terms.
      Vec3 s1 = Vec3::Zero(), s2 = Vec3::Zero(), s3 = Vec3::Zero();
      for (int j = 0; j < 3; ++j) {
        s1 += p.tau[k1][j] * p.g[j];
        s2 += p.tau[k2][j] * p.g[j];
        s3 += p.tau[j][k] * p.A[j];
      }
      R.segment<12>(kThetaOffset + 12 * k) +=
          w * (en.dW[k] -
               Phi.transpose() * (s1.cross(p.v[k2]) + p.v[k1].cross(s2) + s3));

      Vec3 gap_dot_A;  // components A_k . g_j
      for (int j = 0; j < 3; ++j) gap_dot_A[j] = p.A[k].dot(p.g[j]);
      R.segment<6>(kTOffset + 6 * k) += -w * (Psi.transpose() * gap_dot_A);

      R.segment<4>(kUOffset + 4 * k) += w * (basis.dN.transpose() * s3);
    }
  }
  return R;
}

Mat66 element_tangent(const ElementBasisEval& basis, const MaterialLaw& law,
                      const ElementState& state) {
  Mat66 K = Mat66::Zero();
  for (int q = 0; q < basis.n_qp(); ++q) {
    const double w = basis.qweight(q);
    const Mat3x12& Phi = basis.Phi[q];
    const Mat3x6& Psi = basis.Psi[q];
    const PointState p(basis, q, state);

    const InvariantState inv = invariants(basis, q, state.theta);
    const EnergyDerivatives en = energy_and_derivatives(law, inv);

    auto D = [&](const Vec3& vec) -> Mat12 {
      return -Phi.transpose() * (cross_matrix(vec) * Phi);
    };

    // h_i = sum_j tau^i_j dphi^j
    Vec3 h[3];
    for (int i = 0; i < 3; ++i) {
      h[i] = Vec3::Zero();
      for (int j = 0; j < 3; ++j) h[i] += p.tau[i][j] * p.dphi[j];
    }
    Mat3 Gg;  // columns are the gap vectors
    for (int j = 0; j < 3; ++j) Gg.col(j) = p.g[j];

    for (int k = 0; k < 3; ++k) {
      const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;

      // theta-theta: energy part everywhere, traction coupling off-diagonal
      K.block<12, 12>(12 * k, 12 * k) += w * en.ddW[k][k];
      K.block<12, 12>(12 * k, 12 * k1) +=
          w * (en.ddW[k][k1] - p.trace * D(p.v[k2]) + D(h[k2]));
      K.block<12, 12>(12 * k, 12 * k2) +=
          w * (en.ddW[k][k2] + p.trace * D(p.v[k1]) - D(h[k1]));

      // theta-t
      const Mat3x12 XGk1 = cross_matrix(p.v[k1]) * Phi;
      const Mat3x12 XGk2 = cross_matrix(p.v[k2]) * Phi;
      const Eigen::Matrix<double, 12, 6> Bkk =
          -w * (Phi.transpose() * p.A[k]) * Psi.row(k);
      const Eigen::Matrix<double, 12, 6> Bkk1 =
          -w * (XGk2.transpose() * (Gg * Psi) +
                (Phi.transpose() * p.A[k1]) * Psi.row(k));
      const Eigen::Matrix<double, 12, 6> Bkk2 =
          w * (XGk1.transpose() * (Gg * Psi) -
               (Phi.transpose() * p.A[k2]) * Psi.row(k));
      K.block<12, 6>(12 * k, kTOffset + 6 * k) += Bkk;
      K.block<6, 12>(kTOffset + 6 * k, 12 * k) += Bkk.transpose();
      K.block<12, 6>(12 * k, kTOffset + 6 * k1) += Bkk1;
      K.block<6, 12>(kTOffset + 6 * k1, 12 * k) += Bkk1.transpose();
      K.block<12, 6>(12 * k, kTOffset + 6 * k2) += Bkk2;
      K.block<6, 12>(kTOffset + 6 * k2, 12 * k) += Bkk2.transpose();

      // theta-u
      for (int l = 0; l < 3; ++l) {
        const Eigen::Matrix<double, 12, 4> B =
            w * (p.tau[k1][l] * (XGk2.transpose() * basis.dN) -
                 p.tau[k2][l] * (XGk1.transpose() * basis.dN));
        K.block<12, 4>(12 * k, kUOffset + 4 * l) += B;
        K.block<4, 12>(kUOffset + 4 * l, 12 * k) += B.transpose();
      }

      // u-t
      for (int l = 0; l < 3; ++l) {
        const Eigen::Matrix<double, 4, 6> B =
            w * (basis.dN.transpose() * p.A[l]) * Psi.row(k);
        K.block<4, 6>(kUOffset + 4 * k, kTOffset + 6 * l) += B;
        K.block<6, 4>(kTOffset + 6 * l, kUOffset + 4 * k) += B.transpose();
      }
    }
  }
  return K;
}

double element_min_J(const ElementBasisEval& basis,
                     const std::array<Vec12, 3>& theta) {
  double min_J = std::numeric_limits<double>::max();
  for (int q = 0; q < basis.n_qp(); ++q) {
    const Mat3x12& Phi = basis.Phi[q];
    const double J =
        (Phi * theta[0]).cross(Phi * theta[1]).dot(Phi * theta[2]);
    min_J = std::min(min_J, J);
  }
  return min_J;
}

}  // namespace hwforms
