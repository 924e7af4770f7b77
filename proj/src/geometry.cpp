#include "spinorsurf/geometry.hpp"

#include <cmath>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

using cd = std::complex<double>;

namespace {

constexpr cd kI{0.0, 1.0};

ComplexField C(const RealField& x) { return x.cast<cd>(); }

}  // namespace

CVec3Field nabla_fields(const ConnectionTable& conn, const CVec3Field& a, const CVec3Field& b) {
  const Eigen::Index n = a[0].size();
  CVec3Field out;
  for (auto& c : out) c = ComplexField::Zero(n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Rational& q = conn.gamma(i, j, k);
        if (is_zero(q)) continue;
        out[i] += to_double(q) * a[k] * b[j];
      }
  return out;
}

Vec3Field normal_frame(const SpinorField& s) {
  const RealField ea = s.psi1.abs2() + s.psi2.abs2();
  if (!(ea.minCoeff() > 0.0)) throw DegenerateImmersion("spinor vanishes at some node");
  const ComplexField p = s.psi1 * s.psi2;
  Vec3Field n;
  n[0] = (kI * (p - p.conjugate())).real() / ea;
  n[1] = -(p + p.conjugate()).real() / ea;
  n[2] = (s.psi2.abs2() - s.psi1.abs2()) / ea;
  return n;
}

Vec3Field normal_from_Z(const ZField& zf) {
  // X = 2 Re Z, Y = −2 Im Z; the normal is X × Y normalized
  const Eigen::Index n = zf.z[0].size();
  Vec3Field out;
  for (auto& c : out) c.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Vector3d x, y;
    for (int c = 0; c < 3; ++c) {
      x[c] = 2.0 * zf.z[c][k].real();
      y[c] = -2.0 * zf.z[c][k].imag();
    }
    const Eigen::Vector3d m{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                            x[0] * y[1] - x[1] * y[0]};
    const double len = m.norm();
    if (!(len > 0.0)) throw DegenerateImmersion("tangent vectors are parallel");
    for (int c = 0; c < 3; ++c) out[c][k] = m[c] / len;
  }
  return out;
}

MeanCurvature mean_curvature(const ZField& zf, GroupKind kind, const Grid& g) {
  const ConnectionTable conn = connection_from_structure(LieGroup3::make(kind));
  CVec3Field zbar;
  for (int c = 0; c < 3; ++c) zbar[c] = zf.z[c].conjugate();
  const CVec3Field t1 = nabla_fields(conn, zf.z, zbar);
  const CVec3Field t2 = nabla_fields(conn, zbar, zf.z);
  const Vec3Field n = normal_from_Z(zf);
  ComplexField proj = ComplexField::Zero(g.size());
  for (int c = 0; c < 3; ++c) {
    const ComplexField dbz = d_zbar(zf.z[c], g);
    proj += (dbz.conjugate() + dbz + t1[c] + t2[c]) * C(n[c]);
  }
  proj /= C(zf.conformFactor);
  MeanCurvature out;
  out.H = proj.real();
  out.imagResidual = interior_sup_norm(RealField(proj.imag()), g);
  return out;
}

ComplexField hopf_group_term(const SpinorField& s, GroupKind kind) {
  const ComplexField q = s.psi1.square() * s.psi2.conjugate().square();
  switch (kind) {
    case GroupKind::Nil:
      return kI * q;
    case GroupKind::SL2:
      return -2.5 * kI * q;
    case GroupKind::Sol:
      return 0.5 * (s.psi2.conjugate().square().square() - s.psi1.square().square());
  }
  return q;
}

ComplexField hopf_differential(const SpinorField& s, GroupKind kind, const Grid& g,
                               double groupTermSign) {
  check_shape(g, s.psi1.size(), "psi1");
  const ComplexField d_psi2bar = d_zbar(s.psi2, g).conjugate();
  return s.psi2.conjugate() * d_z(s.psi1, g) - s.psi1 * d_psi2bar +
         groupTermSign * hopf_group_term(s, kind);
}

ComplexField abresch_coefficient(const RealField& H, GroupKind kind) {
  switch (kind) {
    case GroupKind::Nil:
      return (2.0 * C(H) + kI).inverse();
    case GroupKind::SL2:
      return 5.0 * (2.0 * (C(H) - kI)).inverse();
    case GroupKind::Sol:
      break;
  }
  throw GroupUnsupported("the Abresch differential is defined for nil and sl2 only");
}

AbreschResult abresch_differential(const ComplexField& A, const ComplexField& z3,
                                   const RealField& H, const RealField& conformFactor,
                                   GroupKind kind, const Grid& g) {
  check_shape(g, A.size(), "A");
  const ComplexField c = abresch_coefficient(H, kind);
  AbreschResult r;
  r.At = A + c * z3.square();
  const ComplexField dbarAt = d_zbar(r.At, g);
  const ComplexField hz = d_z(C(H), g);
  const ComplexField defect =
      d_zbar(A, g) + 2.0 * c * z3 * d_zbar(z3, g) - 0.5 * hz * C(conformFactor);
  r.defect = interior_sup_norm(defect, g);
  r.dbarSup = interior_sup_norm(dbarAt, g);
  return r;
}

CodazziResult codazzi_residuals(const RealField& alpha, const ComplexField& A, const RealField& H,
                                const ComplexField& z3, const SpinorField& s, GroupKind kind,
                                const Grid& g) {
  check_shape(g, alpha.size(), "alpha");
  const RealField e2a = (2.0 * alpha).exp();
  const ComplexField alpha_zzbar = d_zbar(d_z(C(alpha), g), g);
  const RealField a1 = s.psi1.abs2(), a2 = s.psi2.abs2();

  CodazziResult r;
  r.lhs1 = alpha_zzbar - C(A.abs2() / e2a) + C(0.25 * e2a * H.square());
  ComplexField rhs2;
  const ComplexField hz = d_z(C(H), g);
  switch (kind) {
    case GroupKind::Nil:
    case GroupKind::SL2: {
      r.rhs1 = kind == GroupKind::Nil ? C(3.0 / 16.0 * e2a - z3.abs2())
                                      : C(e2a - 5.0 * z3.abs2());
      const ComplexField c = abresch_coefficient(H, kind);
      // ∂̄(A + cZ₃²) − (∂̄c)Z₃² = ∂̄A + 2cZ₃∂̄Z₃
      const ComplexField lhs2 = d_zbar(A, g) + 2.0 * c * z3 * d_zbar(z3, g);
      rhs2 = lhs2 - 0.5 * hz * C(e2a);
      break;
    }
    case GroupKind::Sol:
      r.rhs1 = C(0.25 * (6.0 * a1 * a2 - a1.square() - a2.square()));
      rhs2 = d_zbar(A, g) - 0.5 * hz * C(e2a) - C(a2.square() - a1.square()) * s.psi1 *
                                                    s.psi2.conjugate();
      break;
  }
  r.r1 = interior_sup_norm(ComplexField(r.lhs1 - r.rhs1), g);
  r.r2 = interior_sup_norm(rhs2, g);
  return r;
}

double weingarten_residual(const SpinorField& s, const RealField& alpha, const ComplexField& A,
                           GroupKind kind, const Grid& g, bool dropGroupTerm) {
  check_shape(g, alpha.size(), "alpha");
  const ComplexField az = d_z(C(alpha), g);
  const ComplexField azb = d_zbar(C(alpha), g);
  const ComplexField ema = C((-alpha).exp());
  const ComplexField& p1 = s.psi1;
  const ComplexField& p2 = s.psi2;
  ComplexField T, S;
  switch (kind) {
    case GroupKind::Nil:
      T = -0.5 * kI * p1.square() * p2.conjugate();
      S = -0.5 * kI * p1.conjugate() * p2.square();
      break;
    case GroupKind::SL2:
      T = 1.25 * kI * p1.square() * p2.conjugate();
      S = 1.25 * kI * p1.conjugate() * p2.square();
      break;
    case GroupKind::Sol:
      T = -0.5 * p2.conjugate().cube();
      S = -0.5 * p1.conjugate().cube();
      break;
  }
  if (dropGroupTerm) {
    T.setZero();
    S.setZero();
  }
  const ComplexField w1 = d_z(p1, g) - (az * p1 + A * ema * p2 + T);
  const ComplexField w2 = d_zbar(p2, g) - (-A.conjugate() * ema * p1 + azb * p2 + S);
  return std::max(interior_sup_norm(w1, g), interior_sup_norm(w2, g));
}

std::vector<double> derivational_residuals(const ZField& zf, const RealField& H, GroupKind kind,
                                           const Grid& g) {
  const ComplexField& Z1 = zf.z[0];
  const ComplexField& Z2 = zf.z[1];
  const ComplexField& Z3 = zf.z[2];
  const ComplexField B1 = Z1.conjugate(), B2 = Z2.conjugate(), B3 = Z3.conjugate();
  std::array<ComplexField, 3> dbz, dzb;  // ∂̄Z_k and ∂Z̄_k = conj(∂̄Z_k)
  for (int c = 0; c < 3; ++c) {
    dbz[c] = d_zbar(zf.z[c], g);
    dzb[c] = dbz[c].conjugate();
  }
  const ComplexField iH2 = 2.0 * kI * C(H);
  const ComplexField n1 = iH2 * (B2 * Z3 - Z2 * B3);
  const ComplexField n2 = iH2 * (B3 * Z1 - Z3 * B1);
  const ComplexField n3 = iH2 * (B1 * Z2 - Z1 * B2);

  std::vector<ComplexField> eq;
  switch (kind) {
    case GroupKind::Nil:
      eq = {dzb[0] - dbz[0],
            dzb[1] - dbz[1],
            dzb[2] - dbz[2] + (Z1 * B2 - B1 * Z2),
            dzb[0] + dbz[0] + (Z2 * B3 + B2 * Z3) - n1,
            dzb[1] + dbz[1] - (Z1 * B3 + B1 * Z3) - n2,
            dzb[2] + dbz[2] - n3};
      break;
    case GroupKind::SL2:
      eq = {dzb[0] - dbz[0] + 0.5 * (Z2 * B3 - B2 * Z3),
            dzb[1] - dbz[1] + 0.5 * (Z3 * B1 - B3 * Z1),
            dzb[2] - dbz[2] - 2.0 * (Z1 * B2 - B1 * Z2),
            dzb[0] + dbz[0] - 2.5 * (Z2 * B3 + B2 * Z3) - n1,
            dzb[1] + dbz[1] + 2.5 * (Z1 * B3 + B1 * Z3) - n2,
            dzb[2] + dbz[2] - n3};
      break;
    case GroupKind::Sol:
      eq = {dzb[0] - dbz[0] + (Z1 * B3 - B1 * Z3),
            dzb[1] - dbz[1] - (Z2 * B3 - B2 * Z3),
            dzb[2] - dbz[2],
            dzb[0] + dbz[0] + (Z1 * B3 + B1 * Z3) - n1,
            dzb[1] + dbz[1] - (Z2 * B3 + B2 * Z3) - n2,
            dzb[2] + dbz[2] - 2.0 * C(Z1.abs2() - Z2.abs2()) - n3};
      break;
  }
  if (kind == GroupKind::Nil) {
    // |ψ₁|⁴ = |ψ₁²|² = |−iZ₁ − Z₂|², |ψ₂|⁴ = |−iZ₁ + Z₂|²
    const RealField q1 = (-kI * Z1 - Z2).abs2();
    const RealField q2 = (-kI * Z1 + Z2).abs2();
    eq.push_back(dzb[2] - dbz[2] + 0.5 * kI * C(q2 - q1));
  }
  std::vector<double> out;
  for (const auto& e : eq) out.push_back(interior_sup_norm(e, g));
  return out;
}

std::complex<double> energy(const PotentialField& p, const Grid& g) {
  const Mask use = !p.degenerateMask;
  return integrate_2form(ComplexField(p.U * p.V), g, &use);
}

RealField tangent_plane_curvature_field(const Vec3Field& n, GroupKind kind) {
  const LieGroup3 group = LieGroup3::make(kind);
  const CurvatureTensor curv = curvature_tensor(group, connection_from_structure(group));
  RealField out(n[0].size());
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    out[k] = tangent_plane_curvature(curv, Eigen::Vector3d(n[0][k], n[1][k], n[2][k]));
  }
  return out;
}

RealField energy_density_spinor(const SpinorField& s, const RealField& H, GroupKind kind) {
  const RealField a1 = s.psi1.abs2(), a2 = s.psi2.abs2();
  const RealField lead = 0.25 * H.square() * (a1 + a2).square();
  switch (kind) {
    case GroupKind::Nil:
      return lead - (a2 - a1).square() / 16.0;
    case GroupKind::SL2:
      return lead - (0.5 * a1 - 0.75 * a2) * (0.75 * a1 - 0.5 * a2);
    case GroupKind::Sol:
      break;
  }
  throw GroupUnsupported("no real spinor energy density for sol");
}

RealField energy_density_geometric(const RealField& H, const RealField& Khat,
                                   const RealField& conformFactor, GroupKind kind) {
  switch (kind) {
    case GroupKind::Nil:
      return 0.25 * (H.square() + Khat / 4.0 - 1.0 / 16.0) * conformFactor;
    case GroupKind::SL2:
      return 0.25 * (H.square() + 5.0 * Khat / 16.0 - 0.25) * conformFactor;
    case GroupKind::Sol:
      break;
  }
  throw GroupUnsupported("no geometric energy form for sol");
}

GeometricEnergy energy_geometric(const RealField& H, const RealField& Khat,
                                 const RealField& conformFactor, const SpinorField& s,
                                 GroupKind kind, const Grid& g) {
  const RealField geo = energy_density_geometric(H, Khat, conformFactor, kind);
  const RealField spin = energy_density_spinor(s, H, kind);
  GeometricEnergy out;
  out.value = integrate_2form(C(geo), g).real();
  const RealField scale = conformFactor * (1.0 + H.square());
  out.maxRelDiff = ((geo - spin).abs() / scale).maxCoeff();
  return out;
}

CmcReport cmc_check(const RealField& H, double abreschSup, const Grid& g, double tol) {
  check_shape(g, H.size(), "H");
  double sum = 0.0;
  int count = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i)
      if (g.interior(i, j)) {
        sum += H[g.index(i, j)];
        ++count;
      }
  const double mean = count ? sum / count : 0.0;
  CmcReport r;
  r.abreschSup = abreschSup;
  r.hVariation = interior_sup_norm(RealField(H - mean), g);
  r.holomorphic = abreschSup <= tol;
  r.constantH = r.hVariation <= tol;
  r.consistent = r.holomorphic == r.constantH;
  return r;
}

}  // namespace spinorsurf
