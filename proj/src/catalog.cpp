#include "spinorsurf/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "spinorsurf/errors.hpp"
#include "spinorsurf/lie_group.hpp"

namespace spinorsurf {

using Vec = Eigen::Vector3d;

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec.run(a, b, fa, fm, fb, whole, tol, 48);
}

namespace {

double inv_sqrt_cosh2(double s) { return 1.0 / std::sqrt(std::cosh(2.0 * s)); }

// Inverse table of w(v) on uniform v nodes, interpolated by quintic Hermite
// in w with exact first and second derivatives of v(w).
struct SolDiagTable {
  static constexpr double vmax = 3.0;
  static constexpr int intervals = 8192;
  std::vector<double> v, w;

  SolDiagTable() {
    v.resize(intervals + 1);
    w.resize(intervals + 1);
    const int mid = intervals / 2;
    const double dv = 2.0 * vmax / intervals;
    for (int k = 0; k <= intervals; ++k) v[k] = -vmax + k * dv;
    v[mid] = 0.0;
    w[mid] = 0.0;
    for (int k = mid; k < intervals; ++k) {
      w[k + 1] = w[k] + adaptive_simpson(inv_sqrt_cosh2, v[k], v[k + 1], 1e-16);
      w[intervals - k - 1] = -w[k + 1];
    }
  }
};

const SolDiagTable& sol_table() {
  static const SolDiagTable table;
  return table;
}

GroupElement nil_at(double x, double y, double z) { return nil_element(x, y, z); }

CatalogEntry nil_plane_x0() {
  CatalogEntry e;
  e.name = "nil-plane-x0";
  e.kind = GroupKind::Nil;
  e.paramMap = [](double u, double v) { return nil_at(0.0, u, v); };
  e.tangents = [](double, double) { return TangentPair{Vec(0, 1, 0), Vec(0, 0, 1)}; };
  e.conformalFactor = [](double, double) { return 1.0; };
  e.expectedMinimal = true;
  e.notes = "vertical plane x = 0; constant spinor";
  return e;
}

CatalogEntry nil_plane_z0() {
  CatalogEntry e;
  e.name = "nil-plane-z0";
  e.kind = GroupKind::Nil;
  e.paramMap = [](double u, double v) { return nil_at(std::sinh(u), v, 0.0); };
  e.tangents = [](double u, double) {
    return TangentPair{Vec(std::cosh(u), 0, 0), Vec(0, 1, -std::sinh(u))};
  };
  e.conformalFactor = [](double u, double) { return std::cosh(u) * std::cosh(u); };
  e.expectedMinimal = true;
  e.notes = "plane z = 0 in the chart x = sinh s; nonconstant spinor";
  return e;
}

CatalogEntry nil_cylinder(double r) {
  if (!(r > 0.0)) throw DomainViolation("cylinder radius must be positive");
  CatalogEntry e;
  e.name = "nil-cylinder";
  e.kind = GroupKind::Nil;
  // u = T, v = rθ; the height shift r²(θ/2 + sin2θ/4) flattens the metric to dT² + r²dθ²
  e.paramMap = [r](double u, double v) {
    const double th = v / r;
    return nil_at(r * std::cos(th), r * std::sin(th),
                  u + r * r * (0.5 * th + 0.25 * std::sin(2.0 * th)));
  };
  e.tangents = [r](double, double v) {
    const double th = v / r;
    return TangentPair{Vec(0, 0, 1), Vec(-std::sin(th), std::cos(th), 0)};
  };
  e.conformalFactor = [](double, double) { return 1.0; };
  e.notes = "vertical cylinder over a circle of radius r; H from oracle";
  e.domain = {-1.0, 1.0, 0.0, 2.0 * r};
  e.periodicDomain = Domain{0.0, 2.0 * std::numbers::pi, 0.0, 4.0 * std::numbers::pi * r};
  return e;
}

CatalogEntry sol_plane_z0() {
  CatalogEntry e;
  e.name = "sol-plane-z0";
  e.kind = GroupKind::Sol;
  e.paramMap = [](double u, double v) { return sol_element(u, v, 0.0); };
  e.tangents = [](double, double) { return TangentPair{Vec(1, 0, 0), Vec(0, 1, 0)}; };
  e.conformalFactor = [](double, double) { return 1.0; };
  e.expectedMinimal = true;
  e.notes = "plane z = 0; Z3 vanishes identically (fully degenerate)";
  return e;
}

CatalogEntry sol_plane_x0() {
  CatalogEntry e;
  e.name = "sol-plane-x0";
  e.kind = GroupKind::Sol;
  auto check = [](double t) {
    if (!(t > 0.0)) throw DomainViolation("sol-plane-x0 needs t > 0, got " + std::to_string(t));
  };
  e.paramMap = [check](double u, double t) {
    check(t);
    return sol_element(0.0, u, std::log(t));
  };
  e.tangents = [check](double, double t) {
    check(t);
    return TangentPair{Vec(0, 1.0 / t, 0), Vec(0, 0, 1.0 / t)};
  };
  e.conformalFactor = [](double, double t) { return 1.0 / (t * t); };
  e.expectedMinimal = true;
  e.notes = "plane x = 0 in the chart (y, t = e^z); metric (du² + dt²)/t²";
  e.domain = {-1.0, 1.0, 0.5, 2.5};
  return e;
}

CatalogEntry sol_exp_diag() {
  CatalogEntry e;
  e.name = "sol-exp-diag";
  e.kind = GroupKind::Sol;
  const double s2 = std::sqrt(0.5);
  e.paramMap = [s2](double u, double w) {
    const double v = sol_diag_v(w).first;
    return sol_element(u * s2, u * s2, v);
  };
  e.tangents = [s2](double, double w) {
    const auto [v, dv] = sol_diag_v(w);
    return TangentPair{Vec(std::exp(v) * s2, std::exp(-v) * s2, 0), Vec(0, 0, dv)};
  };
  e.expectedMinimal = true;
  e.quadrature = true;
  e.notes = "exp(u(e1+e2)/sqrt2) exp(v e3), isothermal via w = int dv/sqrt(cosh 2v)";
  e.domain = {-1.0, 1.0, -0.8, 0.8};
  return e;
}

CatalogEntry sl2_exp_flat() {
  CatalogEntry e;
  e.name = "sl2-exp-flat";
  e.kind = GroupKind::SL2;
  e.paramMap = [](double u, double v) {
    const GroupElement a = group_exp(GroupKind::SL2, Vec(u, 0, 0));
    const GroupElement b = group_exp(GroupKind::SL2, Vec(0, 0, v));
    return group_mul(a, b);
  };
  e.tangents = [](double, double v) {
    return TangentPair{Vec(std::cos(0.5 * v), -std::sin(0.5 * v), 0), Vec(0, 0, 1)};
  };
  e.conformalFactor = [](double, double) { return 1.0; };
  e.notes = "exp(u e1) exp(v e3); flat conformal chart, H from oracle";
  e.domain = {-1.0, 1.0, 0.0, 2.0};
  e.periodicDomain = Domain{0.0, 2.0 * std::numbers::pi, 0.0, 8.0 * std::numbers::pi};
  return e;
}

Vec nabla_real(const ConnectionTable& conn, const Vec& a, const Vec& b) {
  return conn.nabla(a.cast<cdouble>(), b.cast<cdouble>()).real();
}

Vec fd(const std::function<Vec(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

ChartMatrix fd_matrix(const std::function<ChartMatrix(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

}  // namespace

std::pair<double, double> sol_diag_v(double w) {
  const SolDiagTable& t = sol_table();
  if (!(std::abs(w) <= t.w.back())) {
    throw DomainViolation("sol-exp-diag chart covers |w| <= " + std::to_string(t.w.back()));
  }
  auto it = std::upper_bound(t.w.begin(), t.w.end(), w);
  std::size_t k = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - t.w.begin(), 1) - 1,
                                        t.w.size() - 2);
  const double w0 = t.w[k], w1 = t.w[k + 1], dw = w1 - w0;
  const double v0 = t.v[k], v1 = t.v[k + 1];
  // dv/dw = sqrt(cosh 2v), d²v/dw² = sinh 2v
  const double d0 = std::sqrt(std::cosh(2 * v0)) * dw, d1 = std::sqrt(std::cosh(2 * v1)) * dw;
  const double s0 = std::sinh(2 * v0) * dw * dw, s1 = std::sinh(2 * v1) * dw * dw;
  const double x = (w - w0) / dw, x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
  const double v = (1 - 10 * x3 + 15 * x4 - 6 * x5) * v0 + (x - 6 * x3 + 8 * x4 - 3 * x5) * d0 +
                   (0.5 * x2 - 1.5 * x3 + 1.5 * x4 - 0.5 * x5) * s0 +
                   (0.5 * x3 - x4 + 0.5 * x5) * s1 + (-4 * x3 + 7 * x4 - 3 * x5) * d1 +
                   (10 * x3 - 15 * x4 + 6 * x5) * v1;
  const double dv = ((-30 * x2 + 60 * x3 - 30 * x4) * v0 + (1 - 18 * x2 + 32 * x3 - 15 * x4) * d0 +
                     (x - 4.5 * x2 + 6 * x3 - 2.5 * x4) * s0 + (1.5 * x2 - 4 * x3 + 2.5 * x4) * s1 +
                     (-12 * x2 + 28 * x3 - 15 * x4) * d1 + (30 * x2 - 60 * x3 + 30 * x4) * v1) /
                    dw;
  return {v, dv};
}

double sol_diag_w(double v) { return adaptive_simpson(inv_sqrt_cosh2, 0.0, v, 1e-12); }

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"nil-plane-x0", "nil-plane-z0", "nil-cylinder",
                                              "sol-plane-z0", "sol-plane-x0", "sol-exp-diag",
                                              "sl2-exp-flat"};
  return names;
}

CatalogEntry catalog_entry(const std::string& name, const CatalogParams& params) {
  if (name == "nil-plane-x0") return nil_plane_x0();
  if (name == "nil-plane-z0") return nil_plane_z0();
  if (name == "nil-cylinder") return nil_cylinder(params.radius);
  if (name == "sol-plane-z0") return sol_plane_z0();
  if (name == "sol-plane-x0") return sol_plane_x0();
  if (name == "sol-exp-diag") return sol_exp_diag();
  if (name == "sl2-exp-flat") return sl2_exp_flat();
  throw UnknownSurface("no catalog surface named '" + name + "'");
}

Grid entry_grid(const CatalogEntry& e, int nu, int nv) {
  return Grid::open(nu, nv, e.domain.umin, e.domain.umax, e.domain.vmin, e.domain.vmax);
}

ImmersionField catalog_surface(const CatalogEntry& e, const Grid& g) {
  ImmersionField f;
  f.kind = e.kind;
  f.elements.resize(static_cast<std::size_t>(g.size()));
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) f.elements[g.index(i, j)] = e.paramMap(g.u(i), g.v(j));
  return f;
}

ZField closed_form_z(const CatalogEntry& e, const Grid& g, const MaurerCartanOptions& opt) {
  std::array<RealField, 3> x, y;
  for (int c = 0; c < 3; ++c) {
    x[c].resize(g.size());
    y[c].resize(g.size());
  }
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const auto [tx, ty] = e.tangents(g.u(i), g.v(j));
      const Eigen::Index k = g.index(i, j);
      for (int c = 0; c < 3; ++c) {
        x[c][k] = tx[c];
        y[c][k] = ty[c];
      }
    }
  return z_from_tangents(x, y, g, opt);
}

TangentPair tangent_oracle(const CatalogEntry& e, double u, double v, double h) {
  const ChartMatrix inv = group_inv(e.paramMap(u, v)).m;
  const ChartMatrix fu = fd_matrix([&](double s) { return e.paramMap(s, v).m; }, u, h);
  const ChartMatrix fv = fd_matrix([&](double s) { return e.paramMap(u, s).m; }, v, h);
  return {algebra_coords(e.kind, inv * fu).real(), algebra_coords(e.kind, inv * fv).real()};
}

namespace {

struct SecondOrder {
  Vec x, y, xu, xv, yu, yv, n;
};

SecondOrder second_order(const CatalogEntry& e, double u, double v, double h) {
  SecondOrder s;
  std::tie(s.x, s.y) = tangent_oracle(e, u, v, h);
  s.xu = fd([&](double t) { return tangent_oracle(e, t, v, h).first; }, u, h);
  s.xv = fd([&](double t) { return tangent_oracle(e, u, t, h).first; }, v, h);
  s.yu = fd([&](double t) { return tangent_oracle(e, t, v, h).second; }, u, h);
  s.yv = fd([&](double t) { return tangent_oracle(e, u, t, h).second; }, v, h);
  s.n = s.x.cross(s.y).normalized();
  return s;
}

}  // namespace

double mean_curvature_oracle(const CatalogEntry& e, double u, double v, double h) {
  const ConnectionTable conn = connection_from_structure(LieGroup3::make(e.kind));
  const SecondOrder s = second_order(e, u, v, h);
  const Vec uu = s.xu + nabla_real(conn, s.x, s.x);
  const Vec vv = s.yv + nabla_real(conn, s.y, s.y);
  return (uu + vv).dot(s.n) / (s.x.squaredNorm() + s.y.squaredNorm());
}

std::complex<double> hopf_oracle(const CatalogEntry& e, double u, double v, double h) {
  const ConnectionTable conn = connection_from_structure(LieGroup3::make(e.kind));
  const SecondOrder s = second_order(e, u, v, h);
  const cdouble i(0.0, 1.0);
  const Eigen::Vector3cd psi = 0.5 * (s.x.cast<cdouble>() - i * s.y.cast<cdouble>());
  const Eigen::Vector3cd dpsi =
      0.25 * ((s.xu - s.yv).cast<cdouble>() - i * (s.xv + s.yu).cast<cdouble>());
  // Eigen conjugates the left operand of dot(); N is real so put it there
  return s.n.cast<cdouble>().dot(dpsi + conn.nabla(psi, psi));
}

}  // namespace spinorsurf
