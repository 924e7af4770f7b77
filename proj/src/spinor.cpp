#include "spinorsurf/spinor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

using cd = std::complex<double>;

namespace {

constexpr cd kI{0.0, 1.0};

std::string node_name(const Grid& g, Eigen::Index k) {
  return "(" + std::to_string(k % g.nu) + "," + std::to_string(k / g.nu) + ")";
}

// Calls fn(a, b) once for every grid edge, seams of periodic axes included.
template <class Fn>
void for_each_edge(const Grid& g, Fn&& fn) {
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Eigen::Index k = g.index(i, j);
      if (i + 1 < g.nu) fn(k, g.index(i + 1, j));
      else if (g.periodicU) fn(k, g.index(0, j));
      if (j + 1 < g.nv) fn(k, g.index(i, j + 1));
      else if (g.periodicV) fn(k, g.index(i, 0));
    }
}

template <class Fn>
void for_each_neighbour(const Grid& g, Eigen::Index k, Fn&& fn) {
  const int i = static_cast<int>(k % g.nu), j = static_cast<int>(k / g.nu);
  if (i > 0) fn(g.index(i - 1, j));
  else if (g.periodicU) fn(g.index(g.nu - 1, j));
  if (i + 1 < g.nu) fn(g.index(i + 1, j));
  else if (g.periodicU) fn(g.index(0, j));
  if (j > 0) fn(g.index(i, j - 1));
  else if (g.periodicV) fn(g.index(i, g.nv - 1));
  if (j + 1 < g.nv) fn(g.index(i, j + 1));
  else if (g.periodicV) fn(g.index(i, 0));
}

}  // namespace

void finalize_zfield(ZField& zf, const Grid& g, const MaurerCartanOptions& opt) {
  for (const auto& c : zf.z) check_shape(g, c.size(), "Z component");
  const RealField sq = zf.z[0].abs2() + zf.z[1].abs2() + zf.z[2].abs2();
  zf.conformFactor = 2.0 * sq;
  zf.isotropy = (zf.z[0].square() + zf.z[1].square() + zf.z[2].square()).abs() / sq;
  for (Eigen::Index k = 0; k < sq.size(); ++k) {
    if (!(zf.conformFactor[k] >= opt.degenerateTol)) {
      throw DegenerateImmersion("e^{2a} = " + std::to_string(zf.conformFactor[k]) + " at node " +
                                node_name(g, k));
    }
  }
  const double iso = interior_sup_norm(zf.isotropy, g);
  if (iso > opt.conformalTol) {
    throw NonConformal("isotropy residual " + std::to_string(iso) + " exceeds " +
                       std::to_string(opt.conformalTol));
  }
}

ZField z_from_tangents(const std::array<RealField, 3>& x, const std::array<RealField, 3>& y,
                       const Grid& g, const MaurerCartanOptions& opt) {
  ZField zf;
  for (int k = 0; k < 3; ++k) {
    check_shape(g, x[k].size(), "tangent");
    check_shape(g, y[k].size(), "tangent");
    zf.z[k] = 0.5 * (x[k].cast<cd>() - kI * y[k].cast<cd>());
  }
  finalize_zfield(zf, g, opt);
  return zf;
}

ZField maurer_cartan(const ImmersionField& f, const Grid& g, const MaurerCartanOptions& opt) {
  check_shape(g, static_cast<Eigen::Index>(f.elements.size()), "immersion");
  const Eigen::Index n = g.size();
  std::array<ComplexField, 9> du, dv;
  for (int e = 0; e < 9; ++e) {
    ComplexField entry(n);
    for (Eigen::Index k = 0; k < n; ++k) entry[k] = f.elements[k].m(e / 3, e % 3);
    du[e] = d_u(entry, g);
    dv[e] = d_v(entry, g);
  }
  std::array<RealField, 3> x, y;
  for (int c = 0; c < 3; ++c) {
    x[c].resize(n);
    y[c].resize(n);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const ChartMatrix inv = group_inv(f.elements[k]).m;
    ChartMatrix mu, mv;
    for (int e = 0; e < 9; ++e) {
      mu(e / 3, e % 3) = du[e][k];
      mv(e / 3, e % 3) = dv[e][k];
    }
    const Eigen::Vector3cd xu = algebra_coords(f.kind, inv * mu);
    const Eigen::Vector3cd xv = algebra_coords(f.kind, inv * mv);
    for (int c = 0; c < 3; ++c) {
      x[c][k] = xu[c].real();
      y[c][k] = xv[c].real();
    }
  }
  return z_from_tangents(x, y, g, opt);
}

SpinorField spinor_from_Z(const ZField& zf, const Grid& g) {
  const Eigen::Index n = g.size();
  for (const auto& c : zf.z) check_shape(g, c.size(), "Z component");
  const RealField ea = zf.conformFactor.sqrt();

  // a = ψ₁, b = ψ̄₂, determined up to the signs fixed below. The larger of a², b²
  // goes through the square root. Near a double zero of the smaller one the
  // square root turns O(h⁴) errors in Z into O(h²) errors in ψ, so there the
  // smaller factor comes from ab = Z₃ instead. The two are blended with a
  // smooth weight; a hard switch would make the discretization error jagged.
  ComplexField a(n), b(n);
  std::vector<bool> tied(n);  // true when ab = Z₃ pins the relative sign
  for (Eigen::Index k = 0; k < n; ++k) {
    const cd z1 = zf.z[0][k], z2 = zf.z[1][k], z3 = zf.z[2][k];
    cd w1 = -kI * z1 - z2, w2 = -kI * z1 + z2;
    // round-off in w becomes a spurious O(sqrt(eps)) spinor component
    if (std::abs(w1) < 1e-12 * ea[k]) w1 = 0.0;
    if (std::abs(w2) < 1e-12 * ea[k]) w2 = 0.0;
    const bool firstLarger = std::abs(w1) >= std::abs(w2);
    const cd wBig = firstLarger ? w1 : w2, wSmall = firstLarger ? w2 : w1;
    const cd big = std::sqrt(wBig);
    cd small = std::sqrt(wSmall);
    if (big != 0.0) {
      const cd quotient = z3 / big;
      if (std::abs(small - quotient) > std::abs(small + quotient)) small = -small;
      const double t = std::clamp((std::abs(wSmall) / std::abs(wBig) - 0.1) / 0.4, 0.0, 1.0);
      const double theta = t * t * (3.0 - 2.0 * t);
      small = theta * small + (1.0 - theta) * quotient;
    }
    a[k] = firstLarger ? big : small;
    b[k] = firstLarger ? small : big;
    tied[k] = std::abs(a[k] * b[k]) > 1e-8 * ea[k];
  }

  Eigen::Index seed = 0;
  ea.maxCoeff(&seed);

  std::vector<bool> done(n, false);
  std::deque<Eigen::Index> queue{seed};
  done[seed] = true;
  while (!queue.empty()) {
    const Eigen::Index p = queue.front();
    queue.pop_front();
    for_each_neighbour(g, p, [&](Eigen::Index q) {
      if (done[q]) return;
      if (tied[q]) {
        const double overlap = std::real(a[q] * std::conj(a[p]) + b[q] * std::conj(b[p]));
        if (overlap < 0.0) {
          a[q] = -a[q];
          b[q] = -b[q];
        }
      } else {
        if (std::real(a[q] * std::conj(a[p])) < 0.0) a[q] = -a[q];
        if (std::real(b[q] * std::conj(b[p])) < 0.0) b[q] = -b[q];
      }
      done[q] = true;
      queue.push_back(q);
    });
  }

  for_each_edge(g, [&](Eigen::Index p, Eigen::Index q) {
    const double overlap = std::real(a[q] * std::conj(a[p]) + b[q] * std::conj(b[p]));
    if (!(overlap > 0.0)) {
      throw BranchInconsistency("spinor sign flips across edge " + node_name(g, p) + "-" +
                                node_name(g, q) + " (cycle through seed " + node_name(g, seed) +
                                "); the chart carries a nontrivial spin structure");
    }
  });

  SpinorField s;
  s.psi1 = a;
  s.psi2 = b.conjugate();
  s.signSeedNode = seed;
  return s;
}

ZField Z_from_spinor(const SpinorField& s) {
  const ComplexField a2 = s.psi1.square();
  const ComplexField b2 = s.psi2.conjugate().square();
  ZField zf;
  zf.z[0] = 0.5 * kI * (b2 + a2);
  zf.z[1] = 0.5 * (b2 - a2);
  zf.z[2] = s.psi1 * s.psi2.conjugate();
  const RealField sq = zf.z[0].abs2() + zf.z[1].abs2() + zf.z[2].abs2();
  zf.conformFactor = 2.0 * sq;
  zf.isotropy = (zf.z[0].square() + zf.z[1].square() + zf.z[2].square()).abs() / sq;
  return zf;
}

Mask sol_degenerate_mask(const SpinorField& s, double eps) {
  const RealField a1 = s.psi1.abs2(), a2 = s.psi2.abs2();
  const double scale = (a1 + a2).maxCoeff();
  return (a1 < eps * scale) || (a2 < eps * scale);
}

PotentialField potentials(const SpinorField& s, const RealField& H, GroupKind kind,
                          double epsDeg) {
  const Eigen::Index n = s.psi1.size();
  if (s.psi2.size() != n || H.size() != n) throw ShapeMismatch("potentials: field sizes differ");
  const RealField a1 = s.psi1.abs2(), a2 = s.psi2.abs2();
  const ComplexField base = (0.5 * H * (a1 + a2)).cast<cd>();
  PotentialField p;
  p.degenerateMask = Mask::Constant(n, false);
  switch (kind) {
    case GroupKind::Nil:
      p.U = base + 0.25 * kI * (a2 - a1).cast<cd>();
      p.V = p.U;
      break;
    case GroupKind::SL2:
      p.U = base + kI * (0.5 * a1 - 0.75 * a2).cast<cd>();
      p.V = base + kI * (0.75 * a1 - 0.5 * a2).cast<cd>();
      break;
    case GroupKind::Sol: {
      p.degenerateMask = sol_degenerate_mask(s, epsDeg);
      p.U.resize(n);
      p.V.resize(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        if (p.degenerateMask[k]) {
          p.U[k] = p.V[k] = 0.0;
          continue;
        }
        const cd c1 = std::conj(s.psi1[k]), c2 = std::conj(s.psi2[k]);
        p.U[k] = base[k] - 0.5 * c2 * c2 * c1 / s.psi1[k];
        p.V[k] = base[k] + 0.5 * c1 * c1 * c2 / s.psi2[k];
      }
      break;
    }
  }
  return p;
}

Mask potential_norm_mask(const PotentialField& p, const Grid& g) {
  check_shape(g, p.degenerateMask.size(), "mask");
  Mask use(g.size());
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    if (!p.degenerateMask[k]) {
      use[k] = true;
      continue;
    }
    bool inner = true;
    for_each_neighbour(g, k, [&](Eigen::Index q) { inner = inner && p.degenerateMask[q]; });
    use[k] = inner;
  }
  return use;
}

DiracResidual dirac_residual(const SpinorField& s, const PotentialField& p, const Grid& g) {
  check_shape(g, s.psi1.size(), "psi1");
  check_shape(g, s.psi2.size(), "psi2");
  check_shape(g, p.U.size(), "U");
  check_shape(g, p.V.size(), "V");
  DiracResidual r;
  r.r1 = d_z(s.psi2, g) + p.U * s.psi1;
  r.r2 = -d_zbar(s.psi1, g) + p.V * s.psi2;
  const Mask use = potential_norm_mask(p, g);
  r.norm = std::max(interior_sup_norm(r.r1, g, &use), interior_sup_norm(r.r2, g, &use));
  return r;
}

double identity_residual(const SpinorField& s, const PotentialField& p, const Grid& g) {
  check_shape(g, s.psi1.size(), "psi1");
  const ComplexField lhs = d_zbar(s.psi1 * s.psi2.conjugate(), g);
  const ComplexField a1 = s.psi1.abs2().cast<cd>(), a2 = s.psi2.abs2().cast<cd>();
  const ComplexField rhs = (-p.U.real().cast<cd>() * a1 + p.V.real().cast<cd>() * a2) +
                           kI * (p.U.imag().cast<cd>() * a1 + p.V.imag().cast<cd>() * a2);
  const Mask use = potential_norm_mask(p, g);
  return interior_sup_norm(ComplexField(lhs - rhs), g, &use);
}

MinimalResidual minimal_equation_residual(const SpinorField& s, const Grid& g, GroupKind kind) {
  check_shape(g, s.psi1.size(), "psi1");
  check_shape(g, s.psi2.size(), "psi2");
  const ComplexField dbar1 = d_zbar(s.psi1, g);
  const ComplexField d2 = d_z(s.psi2, g);
  const ComplexField a1 = s.psi1.abs2().cast<cd>(), a2 = s.psi2.abs2().cast<cd>();
  const ComplexField c1 = s.psi1.conjugate(), c2 = s.psi2.conjugate();

  ComplexField spec1, spec2, alt1, alt2;
  switch (kind) {
    case GroupKind::Nil: {
      const ComplexField w = 0.25 * kI * (a2 - a1);
      spec1 = dbar1 - w * s.psi2;
      spec2 = d2 + w * s.psi1;
      alt1 = dbar1 - w * s.psi1;
      alt2 = spec2;
      break;
    }
    case GroupKind::SL2:
      spec1 = dbar1 - kI * (0.75 * a1 - 0.5 * a2) * s.psi2;
      spec2 = d2 + kI * (0.5 * a1 - 0.75 * a2) * s.psi1;
      alt1 = spec1;
      alt2 = spec2;
      break;
    case GroupKind::Sol:
      spec1 = dbar1 - 0.5 * c1.square() * c2;
      spec2 = d2 - 0.5 * c1 * c2.square();
      alt1 = spec1;
      alt2 = d2 + 0.5 * c1 * c2.square();
      break;
  }
  MinimalResidual r;
  r.specialization = interior_sup_norm(RealField(spec1.abs() + spec2.abs()), g);
  r.alternate = interior_sup_norm(RealField(alt1.abs() + alt2.abs()), g);
  return r;
}

}  // namespace spinorsurf
