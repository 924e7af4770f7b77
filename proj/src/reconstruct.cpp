#include "spinorsurf/reconstruct.hpp"

#include <cmath>
#include <string>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

namespace {

using Vec = Eigen::Vector3d;

constexpr double kOverflowGuard = 1e150;

// Real tangent coordinates X (u-direction) and Y (v-direction) per node.
struct Tangents {
  std::vector<Vec> x, y;
};

Tangents tangents(const ZField& zf) {
  const Eigen::Index n = zf.z[0].size();
  Tangents t{std::vector<Vec>(n), std::vector<Vec>(n)};
  for (Eigen::Index k = 0; k < n; ++k)
    for (int c = 0; c < 3; ++c) {
      t.x[k][c] = 2.0 * zf.z[c][k].real();
      t.y[k][c] = -2.0 * zf.z[c][k].imag();
    }
  return t;
}

// Value halfway between samples k and k+1 of a line of n samples, by cubic
// interpolation; wraps on periodic lines, one-sided stencils at open ends.
template <class At>
Vec midpoint(At&& at, int k, int n, bool periodic) {
  auto w = [&](int m) { return at(((m % n) + n) % n); };
  if (periodic || (k >= 1 && k + 2 <= n - 1)) {
    return (-w(k - 1) + 9.0 * w(k) + 9.0 * w(k + 1) - w(k + 2)) / 16.0;
  }
  if (k == 0) return (5.0 * at(0) + 15.0 * at(1) - 5.0 * at(2) + at(3)) / 16.0;
  return (at(n - 4) - 5.0 * at(n - 3) + 15.0 * at(n - 2) + 5.0 * at(n - 1)) / 16.0;
}

ChartMatrix real_algebra(GroupKind kind, const Vec& v) {
  return algebra_matrix(kind, v.cast<cdouble>());
}

// One RK4 step of Φ' = Φ·M(t), Φ(0) = I, over length h.
GroupElement propagator(GroupKind kind, const Vec& a, const Vec& mid, const Vec& b, double h) {
  const ChartMatrix m0 = real_algebra(kind, a);
  const ChartMatrix mm = real_algebra(kind, mid);
  const ChartMatrix m1 = real_algebra(kind, b);
  const ChartMatrix id = ChartMatrix::Identity();
  const ChartMatrix k1 = m0;
  const ChartMatrix k2 = (id + 0.5 * h * k1) * mm;
  const ChartMatrix k3 = (id + 0.5 * h * k2) * mm;
  const ChartMatrix k4 = (id + h * k3) * m1;
  GroupElement phi{kind, id + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0};
  renormalize(phi);
  if (kind == GroupKind::SL2) phi.windingAngle = 2.0 * std::arg(phi.m(0, 0));
  return phi;
}

void guard(const GroupElement& e, const Grid& g, Eigen::Index k) {
  const double m = e.m.cwiseAbs().maxCoeff();
  if (!(m < kOverflowGuard)) {
    throw ChartBlowup("chart entry " + std::to_string(m) + " at node (" +
                      std::to_string(k % g.nu) + "," + std::to_string(k / g.nu) + ")");
  }
}

// Propagator along u from node (i, j) to (i + 1, j).
GroupElement step_u(const Tangents& t, GroupKind kind, const Grid& g, int i, int j) {
  auto at = [&](int m) { return t.x[g.index(m, j)]; };
  const int i1 = (i + 1) % g.nu;
  return propagator(kind, at(i), midpoint(at, i, g.nu, g.periodicU), at(i1), g.hu);
}

GroupElement step_v(const Tangents& t, GroupKind kind, const Grid& g, int i, int j) {
  auto at = [&](int m) { return t.y[g.index(i, m)]; };
  const int j1 = (j + 1) % g.nv;
  return propagator(kind, at(j), midpoint(at, j, g.nv, g.periodicV), at(j1), g.hv);
}

}  // namespace

ReconstructionResult integrate_frame(const ZField& zf, GroupKind kind, const Grid& g,
                                     const GroupElement& origin) {
  for (const auto& c : zf.z) check_shape(g, c.size(), "Z component");
  if (origin.kind != kind) throw ShapeMismatch("origin belongs to a different group");
  const Tangents t = tangents(zf);

  ReconstructionResult r;
  r.immersion.kind = kind;
  auto& f = r.immersion.elements;
  f.assign(static_cast<std::size_t>(g.size()), identity_element(kind));
  for (int j = 0; j + 1 < g.nv; ++j) {
    const Eigen::Index k = g.index(0, j + 1);
    f[k] = group_mul(f[g.index(0, j)], step_v(t, kind, g, 0, j));
    guard(f[k], g, k);
  }
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) {
      const Eigen::Index k = g.index(i + 1, j);
      f[k] = group_mul(f[g.index(i, j)], step_u(t, kind, g, i, j));
      guard(f[k], g, k);
    }
  for (auto& e : f) e = group_mul(origin, e);
  r.holonomyNorm = holonomy_residual(zf, kind, g).maxCoeff();
  return r;
}

RealField holonomy_residual(const ZField& zf, GroupKind kind, const Grid& g) {
  for (const auto& c : zf.z) check_shape(g, c.size(), "Z component");
  const Tangents t = tangents(zf);
  RealField out = RealField::Zero(g.size());
  const double area = g.hu * g.hv;
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) {
      const GroupElement a = group_mul(step_u(t, kind, g, i, j), step_v(t, kind, g, i + 1, j));
      const GroupElement b = group_mul(step_v(t, kind, g, i, j), step_u(t, kind, g, i, j + 1));
      out[g.index(i, j)] = chart_distance(a, b) / area;
    }
  return out;
}

double round_trip_error(const ImmersionField& f0, const ImmersionField& f1, Eigen::Index seed) {
  if (f0.elements.size() != f1.elements.size() || f0.kind != f1.kind) {
    throw ShapeMismatch("immersions differ in size or group");
  }
  if (seed < 0 || seed >= static_cast<Eigen::Index>(f0.elements.size())) {
    throw ShapeMismatch("seed node outside the immersion");
  }
  const GroupElement align = group_mul(f0.elements[seed], group_inv(f1.elements[seed]));
  double err = 0.0;
  for (std::size_t k = 0; k < f0.elements.size(); ++k) {
    const GroupElement d = group_mul(group_inv(f0.elements[k]), group_mul(align, f1.elements[k]));
    err = std::max(err, (d.m - ChartMatrix::Identity()).norm());
  }
  return err;
}

}  // namespace spinorsurf
