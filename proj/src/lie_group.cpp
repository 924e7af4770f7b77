#include "spinorsurf/lie_group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Nil:
      return "nil";
    case GroupKind::SL2:
      return "sl2";
    case GroupKind::Sol:
      return "sol";
  }
  return "?";
}

GroupKind parse_group(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "nil") return GroupKind::Nil;
  if (lower == "sl2") return GroupKind::SL2;
  if (lower == "sol") return GroupKind::Sol;
  throw GroupUnsupported("unknown group '" + std::string(name) + "' (expected nil, sl2 or sol)");
}

namespace {

// Sets [e_i, e_j] = sum_k coeff[k] e_k and its antisymmetric partner (1-based indices).
void set_bracket(Tensor3<Rational>& c, int i, int j, std::array<Rational, 3> coeff) {
  for (int k = 0; k < 3; ++k) {
    c(k, i - 1, j - 1) = coeff[k];
    c(k, j - 1, i - 1) = -coeff[k];
  }
}

}  // namespace

LieGroup3 LieGroup3::nil() {
  LieGroup3 g;
  g.kind = GroupKind::Nil;
  set_bracket(g.c, 1, 2, {0, 0, 1});
  return g;
}

LieGroup3 LieGroup3::sl2() {
  // Raw generators obey [f1,f2] = -4 f3, [f1,f3] = -f2, [f2,f3] = f1; with
  // e_j = f_j / 2 every bracket picks up a factor 1/2.
  LieGroup3 g;
  g.kind = GroupKind::SL2;
  g.basisScale = Rational(1, 2);
  set_bracket(g.c, 1, 2, {0, 0, -2});
  set_bracket(g.c, 1, 3, {0, Rational(-1, 2), 0});
  set_bracket(g.c, 2, 3, {Rational(1, 2), 0, 0});
  return g;
}

LieGroup3 LieGroup3::sol() {
  LieGroup3 g;
  g.kind = GroupKind::Sol;
  set_bracket(g.c, 1, 3, {1, 0, 0});
  set_bracket(g.c, 2, 3, {0, -1, 0});
  return g;
}

LieGroup3 LieGroup3::make(GroupKind kind) {
  switch (kind) {
    case GroupKind::Nil:
      return nil();
    case GroupKind::SL2:
      return sl2();
    case GroupKind::Sol:
      return sol();
  }
  return nil();
}

std::array<Rational, 3> ConnectionTable::covariant(int k, int j) const {
  return {gamma(0, j, k), gamma(1, j, k), gamma(2, j, k)};
}

Eigen::Vector3cd ConnectionTable::nabla(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) const {
  Eigen::Vector3cd out = Eigen::Vector3cd::Zero();
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      const std::complex<double> w = a[k] * b[j];
      for (int i = 0; i < 3; ++i) {
        if (!is_zero(gamma(i, j, k))) out[i] += w * to_double(gamma(i, j, k));
      }
    }
  }
  return out;
}

Tensor4<Rational> jacobiator(const Tensor3<Rational>& c) {
  // [[e_i,e_j],e_k] = c^m_{ij} c^n_{mk} e_n, summed over cyclic (i, j, k)
  Tensor4<Rational> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int n = 0; n < 3; ++n) {
          Rational s = 0;
          for (int m = 0; m < 3; ++m) {
            s += c(m, i, j) * c(n, m, k) + c(m, j, k) * c(n, m, i) + c(m, k, i) * c(n, m, j);
          }
          out(n, i, j, k) = s;
        }
  return out;
}

ConnectionTable connection_from_structure(const LieGroup3& group) {
  const Tensor4<Rational> jac = jacobiator(group.c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!is_zero(jac(0, i, j, k)) || !is_zero(jac(1, i, j, k)) || !is_zero(jac(2, i, j, k))) {
          throw JacobiViolation("structure constants of " + std::string(group.name()) +
                                " fail the Jacobi identity at (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }

  // alpha_{ijk} = <[e_i, e_j], e_k> = c^k_{ij}
  auto alpha = [&](int i, int j, int k) { return group.c(k, i, j); };
  ConnectionTable conn;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        conn.gamma(i, j, k) = Rational(1, 2) * (alpha(k, j, i) + alpha(i, k, j) + alpha(i, j, k));
  return conn;
}

CurvatureTensor curvature_tensor(const LieGroup3& group, const ConnectionTable& conn) {
  // nab[i][k][p]: coefficient of e_p in ∇_{e_i} e_k
  auto nab = [&](int i, int k, int p) { return conn.gamma(p, k, i); };

  CurvatureTensor curv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        std::array<Rational, 3> v{};
        for (int p = 0; p < 3; ++p) {
          for (int q = 0; q < 3; ++q) {
            v[q] += nab(i, k, p) * nab(j, p, q);  // ∇_{e_j} ∇_{e_i} e_k
            v[q] -= nab(j, k, p) * nab(i, p, q);  // ∇_{e_i} ∇_{e_j} e_k
          }
        }
        for (int m = 0; m < 3; ++m) {
          if (is_zero(group.c(m, i, j))) continue;
          for (int q = 0; q < 3; ++q) v[q] += group.c(m, i, j) * nab(m, k, q);
        }
        for (int l = 0; l < 3; ++l) curv.r(l, k, j, i) = v[l];
      }
    }
  }
  return curv;
}

double CurvatureTensor::evaluate(const Eigen::Vector3d& x, const Eigen::Vector3d& y,
                                 const Eigen::Vector3d& z, const Eigen::Vector3d& w) const {
  double s = 0.0;
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
          const Rational& q = r(l, k, j, i);
          if (!is_zero(q)) s += to_double(q) * w[l] * z[k] * y[j] * x[i];
        }
  return s;
}

double sectional_curvature(const CurvatureTensor& curv, const Eigen::Vector3d& x,
                           const Eigen::Vector3d& y) {
  const double xx = x.squaredNorm();
  const double yy = y.squaredNorm();
  const double xy = x.dot(y);
  const double area2 = xx * yy - xy * xy;
  if (!(area2 > 1e-12 * xx * yy) || xx == 0.0 || yy == 0.0) {
    throw DegeneratePlane("vectors do not span a plane");
  }
  return curv.evaluate(x, y, x, y) / area2;
}

double tangent_plane_curvature(const CurvatureTensor& curv, const Eigen::Vector3d& n) {
  if (!(std::abs(n.norm() - 1.0) <= 1e-10)) {
    throw NonUnitNormal("|n| = " + std::to_string(n.norm()));
  }
  // Any vector not parallel to n seeds an orthonormal basis of n^perp.
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(n[k]) < std::abs(n[axis])) axis = k;
  Eigen::Vector3d seed = Eigen::Vector3d::Zero();
  seed[axis] = 1.0;
  const Eigen::Vector3d a = (seed - seed.dot(n) * n).normalized();
  const Eigen::Vector3d b = n.cross(a);
  return sectional_curvature(curv, a, b);
}

}  // namespace spinorsurf
