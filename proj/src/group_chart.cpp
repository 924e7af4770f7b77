#include "spinorsurf/group_chart.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

namespace {

constexpr cdouble kI{0.0, 1.0};

bool all_finite(const ChartMatrix& m) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
  return true;
}

// sinh(s)/s, accurate near s = 0.
cdouble sinhc(cdouble s) {
  if (std::abs(s) < 1e-4) {
    const cdouble s2 = s * s;
    return 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  }
  return std::sinh(s) / s;
}

double fiber_angle(const ChartMatrix& m) { return 2.0 * std::arg(m(0, 0)); }

// Principal fiber angle shifted by whole turns of the SL(2) fiber to land
// nearest to `hint`.
double lift_angle(double principal, double hint) {
  constexpr double turn = 4.0 * std::numbers::pi;
  return principal + turn * std::round((hint - principal) / turn);
}

}  // namespace

ChartMatrix generator(GroupKind kind, int k) {
  ChartMatrix e = ChartMatrix::Zero();
  switch (kind) {
    case GroupKind::Nil:
      if (k == 0) e(0, 1) = 1.0;
      if (k == 1) e(1, 2) = 1.0;
      if (k == 2) e(0, 2) = 1.0;
      break;
    case GroupKind::Sol:
      if (k == 0) e(0, 2) = 1.0;
      if (k == 1) e(1, 2) = 1.0;
      if (k == 2) {
        e(0, 0) = -1.0;
        e(1, 1) = 1.0;
      }
      break;
    case GroupKind::SL2:
      // e_j = f_j / 2 with f1 = [[0,1],[1,0]], f2 = [[0,i],[-i,0]], f3 = diag(i/2, -i/2)
      if (k == 0) {
        e(0, 1) = 0.5;
        e(1, 0) = 0.5;
      }
      if (k == 1) {
        e(0, 1) = 0.5 * kI;
        e(1, 0) = -0.5 * kI;
      }
      if (k == 2) {
        e(0, 0) = 0.25 * kI;
        e(1, 1) = -0.25 * kI;
      }
      break;
  }
  return e;
}

ChartMatrix algebra_matrix(GroupKind kind, const Eigen::Vector3cd& v) {
  return v[0] * generator(kind, 0) + v[1] * generator(kind, 1) + v[2] * generator(kind, 2);
}

Eigen::Vector3cd algebra_coords(GroupKind kind, const ChartMatrix& x) {
  switch (kind) {
    case GroupKind::Nil:
      return {x(0, 1), x(1, 2), x(0, 2)};
    case GroupKind::Sol:
      return {x(0, 2), x(1, 2), 0.5 * (x(1, 1) - x(0, 0))};
    case GroupKind::SL2:
      return {x(0, 1) + x(1, 0), -kI * (x(0, 1) - x(1, 0)), -2.0 * kI * (x(0, 0) - x(1, 1))};
  }
  return Eigen::Vector3cd::Zero();
}

GroupElement identity_element(GroupKind kind) { return GroupElement{kind, ChartMatrix::Identity(), 0.0}; }

GroupElement nil_element(double x, double y, double z) {
  GroupElement g = identity_element(GroupKind::Nil);
  g.m(0, 1) = x;
  g.m(1, 2) = y;
  g.m(0, 2) = z;
  return g;
}

GroupElement sol_element(double x, double y, double z) {
  GroupElement g = identity_element(GroupKind::Sol);
  g.m(0, 0) = std::exp(-z);
  g.m(1, 1) = std::exp(z);
  g.m(0, 2) = x;
  g.m(1, 2) = y;
  return g;
}

GroupElement sl2_element(const Eigen::Matrix2cd& block) {
  GroupElement g = identity_element(GroupKind::SL2);
  g.m.topLeftCorner<2, 2>() = block;
  renormalize(g);
  g.windingAngle = fiber_angle(g.m);
  return g;
}

GroupElement group_exp(GroupKind kind, const Eigen::Vector3d& v) {
  const double a = v[0], b = v[1], c = v[2];
  switch (kind) {
    case GroupKind::Nil:
      // nilpotent: exp(M) = I + M + M^2/2, M^2 = ab E_13
      return nil_element(a, b, c + 0.5 * a * b);
    case GroupKind::Sol: {
      const double px = std::abs(c) < 1e-300 ? 1.0 : -std::expm1(-c) / c;
      const double py = std::abs(c) < 1e-300 ? 1.0 : std::expm1(c) / c;
      return sol_element(a * px, b * py, c);
    }
    case GroupKind::SL2: {
      const ChartMatrix x = algebra_matrix(kind, v.cast<cdouble>());
      const Eigen::Matrix2cd m = x.topLeftCorner<2, 2>();
      const cdouble s = std::sqrt(-m.determinant());
      Eigen::Matrix2cd e = std::cosh(s) * Eigen::Matrix2cd::Identity() + sinhc(s) * m;
      GroupElement g = sl2_element(e);
      // exp(c e3) has m00 = e^{ic/4}, so the fiber angle is exactly c/2; otherwise
      // report the principal lift.
      if (a == 0.0 && b == 0.0) g.windingAngle = lift_angle(g.windingAngle, 0.5 * c);
      return g;
    }
  }
  return identity_element(kind);
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  GroupElement g{a.kind, a.m * b.m, 0.0};
  renormalize(g);
  if (g.kind == GroupKind::SL2) {
    g.windingAngle = lift_angle(fiber_angle(g.m), a.windingAngle + b.windingAngle);
  }
  return g;
}

GroupElement group_inv(const GroupElement& a) {
  if (!all_finite(a.m)) throw SingularElement("non-finite chart matrix");
  GroupElement g = a;
  switch (a.kind) {
    case GroupKind::Nil: {
      const cdouble x = a.m(0, 1), y = a.m(1, 2), z = a.m(0, 2);
      g.m = ChartMatrix::Identity();
      g.m(0, 1) = -x;
      g.m(1, 2) = -y;
      g.m(0, 2) = x * y - z;
      break;
    }
    case GroupKind::Sol: {
      const cdouble d0 = a.m(0, 0), d1 = a.m(1, 1);
      if (std::abs(d0) < 1e-300 || std::abs(d1) < 1e-300) throw SingularElement("zero diagonal");
      g.m = ChartMatrix::Identity();
      g.m(0, 0) = 1.0 / d0;
      g.m(1, 1) = 1.0 / d1;
      g.m(0, 2) = -a.m(0, 2) / d0;
      g.m(1, 2) = -a.m(1, 2) / d1;
      break;
    }
    case GroupKind::SL2: {
      const Eigen::Matrix2cd m = a.m.topLeftCorner<2, 2>();
      const cdouble det = m.determinant();
      if (!(std::abs(det) > 1e-300)) throw SingularElement("zero determinant");
      Eigen::Matrix2cd inv;
      inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
      g.m = ChartMatrix::Identity();
      g.m.topLeftCorner<2, 2>() = inv / det;
      g.windingAngle = -a.windingAngle;
      break;
    }
  }
  if (!all_finite(g.m)) throw SingularElement("inverse overflowed");
  return g;
}

void renormalize(GroupElement& g) {
  ChartMatrix& m = g.m;
  switch (g.kind) {
    case GroupKind::Nil: {
      const double x = m(0, 1).real(), y = m(1, 2).real(), z = m(0, 2).real();
      m = ChartMatrix::Identity();
      m(0, 1) = x;
      m(1, 2) = y;
      m(0, 2) = z;
      break;
    }
    case GroupKind::Sol: {
      const double z = 0.5 * (std::log(std::abs(m(1, 1).real())) - std::log(std::abs(m(0, 0).real())));
      const double x = m(0, 2).real(), y = m(1, 2).real();
      m = ChartMatrix::Identity();
      m(0, 0) = std::exp(-z);
      m(1, 1) = std::exp(z);
      m(0, 2) = x;
      m(1, 2) = y;
      break;
    }
    case GroupKind::SL2: {
      Eigen::Matrix2cd block = m.topLeftCorner<2, 2>();
      const cdouble det = block.determinant();
      block /= std::sqrt(det);
      m = ChartMatrix::Identity();
      m.topLeftCorner<2, 2>() = block;
      break;
    }
  }
}

double chart_distance(const GroupElement& a, const GroupElement& b) { return (a.m - b.m).norm(); }

double chart_invariant_defect(const GroupElement& g) {
  GroupElement p = g;
  renormalize(p);
  double d = (p.m - g.m).cwiseAbs().maxCoeff();
  if (g.kind == GroupKind::SL2) {
    d = std::max(d, std::abs(g.m.topLeftCorner<2, 2>().determinant() - 1.0));
  }
  return d;
}

}  // namespace spinorsurf
