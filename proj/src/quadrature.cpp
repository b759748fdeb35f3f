#include "hwforms/quadrature.hpp"

#include <cmath>

namespace hwforms {

QuadratureRule tet_rule_1pt() {
  QuadratureRule r;
  r.points = {Vec4(0.25, 0.25, 0.25, 0.25)};
  r.weights = {1.0};
  r.degree = 1;
  return r;
}

QuadratureRule tet_rule_4pt() {
  QuadratureRule r;
  const double a = 0.5854101966249685;  // (5 + 3 sqrt 5) / 20
  const double b = 0.1381966011250105;  // (5 - sqrt 5) / 20
  for (int i = 0; i < 4; ++i) {
    Vec4 p = Vec4::Constant(b);
    p[i] = a;
    r.points.push_back(p);
    r.weights.push_back(0.25);
  }
  r.degree = 2;
  return r;
}

QuadratureRule tet_rule_11pt() {
  QuadratureRule r;
  r.degree = 4;

  r.points.push_back(Vec4(0.25, 0.25, 0.25, 0.25));
  r.weights.push_back(-0.0789333333333333333);

  const double a = 11.0 / 14.0;
  const double b = 1.0 / 14.0;
  for (int i = 0; i < 4; ++i) {
    Vec4 p = Vec4::Constant(b);
    p[i] = a;
    r.points.push_back(p);
    r.weights.push_back(0.0457333333333333333);
  }

  const double c = 0.3994035761667992;  // (1 + sqrt(5/14)) / 4
  const double d = 0.1005964238332008;  // (1 - sqrt(5/14)) / 4
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Vec4 p = Vec4::Constant(d);
      p[i] = c;
      p[j] = c;
      r.points.push_back(p);
      r.weights.push_back(0.1493333333333333333);
    }
  }
  return r;
}

QuadratureRule default_tet_rule() { return tet_rule_11pt(); }

TriQuadratureRule tri_rule_3pt() {
  TriQuadratureRule r;
  r.points = {Vec3(0.5, 0.5, 0.0), Vec3(0.0, 0.5, 0.5), Vec3(0.5, 0.0, 0.5)};
  r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return r;
}

}  // namespace hwforms
