#include <doctest.h>

#include <cmath>
#include <random>

#include "spinorsurf/errors.hpp"
#include "spinorsurf/geometry.hpp"
#include "support.hpp"

using namespace spinorsurf;
using cd = std::complex<double>;

namespace {

const cd I(0.0, 1.0);

double max_abs(const ComplexField& f) { return f.abs().maxCoeff(); }

// Vertical Nil plane: constant spinor (i, -1)/sqrt2, Z = (0, 1/2, -i/2), H = 0.
struct VerticalPlane {
  Grid g = Grid::open(24, 24, -1, 1, -1, 1);
  SpinorField s;
  ZField z;
  RealField H, alpha;
  VerticalPlane() {
    const double r = std::sqrt(0.5);
    s.psi1 = ComplexField::Constant(g.size(), cd(0, r));
    s.psi2 = ComplexField::Constant(g.size(), cd(-r, 0));
    z = Z_from_spinor(s);
    H = RealField::Zero(g.size());
    alpha = RealField::Zero(g.size());
  }
};

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("property: spinor normal equals 2i e^{-2a} (conj Z x Z) and is a unit vector") {
    const Grid g = Grid::open(12, 12, -1, 1, -1, 1);
    for (unsigned seed = 1; seed <= 6; ++seed) {
      const SpinorField s = testing::smooth_spinor(g, seed);
      const Vec3Field a = normal_frame(s), b = normal_from_Z(Z_from_spinor(s));
      for (int c = 0; c < 3; ++c) CHECK((a[c] - b[c]).abs().maxCoeff() < 1e-13);
      const RealField len = (a[0].square() + a[1].square() + a[2].square()).sqrt();
      CHECK((len - 1.0).abs().maxCoeff() < 1e-14);
      // N is orthogonal to Re Z and Im Z
      const ZField zf = Z_from_spinor(s);
      const ComplexField dot = zf.z[0] * a[0].cast<cd>() + zf.z[1] * a[1].cast<cd>() +
                               zf.z[2] * a[2].cast<cd>();
      CHECK(max_abs(dot) < 1e-13);
    }
    SpinorField zero;
    zero.psi1 = ComplexField::Zero(4);
    zero.psi2 = ComplexField::Zero(4);
    CHECK_THROWS_AS(normal_frame(zero), DegenerateImmersion);
  }

  TEST_CASE("Hopf group terms") {
    const Grid g = Grid::open(8, 8, 0, 1, 0, 1);
    const SpinorField s = testing::smooth_spinor(g, 4);
    const Eigen::Index k = 20;
    const cd p1 = s.psi1[k], c2 = std::conj(s.psi2[k]);
    CHECK(std::abs(hopf_group_term(s, GroupKind::Nil)[k] - I * p1 * p1 * c2 * c2) < 1e-14);
    CHECK(std::abs(hopf_group_term(s, GroupKind::SL2)[k] + 2.5 * I * p1 * p1 * c2 * c2) < 1e-14);
    CHECK(std::abs(hopf_group_term(s, GroupKind::Sol)[k] -
                   0.5 * (std::pow(c2, 4) - std::pow(p1, 4))) < 1e-14);
  }

  TEST_CASE("Abresch coefficient") {
    const RealField H = RealField::Constant(3, 0.5);
    CHECK(std::abs(abresch_coefficient(H, GroupKind::Nil)[0] - 1.0 / (1.0 + I)) < 1e-15);
    CHECK(std::abs(abresch_coefficient(H, GroupKind::SL2)[0] - 5.0 / (2.0 * (0.5 - I))) < 1e-15);
    CHECK_THROWS_AS(abresch_coefficient(H, GroupKind::Sol), GroupUnsupported);
  }

  TEST_CASE("vertical Nil plane: Hopf differential, Codazzi balance, Abresch") {
    const VerticalPlane p;
    // A = iZ₃² = i(-i/2)² = -i/4 from the group term alone
    const ComplexField A = hopf_differential(p.s, GroupKind::Nil, p.g);
    CHECK(max_abs(A - cd(0, -0.25)) < 1e-14);
    // α_zz̄ - |A|²e^{-2α} + ¼H²e^{2α} = -1/16 and 3/16 e^{2α} - |Z₃|² = 3/16 - 1/4
    const CodazziResult c = codazzi_residuals(p.alpha, A, p.H, p.z.z3(), p.s, GroupKind::Nil, p.g);
    CHECK(max_abs(c.lhs1 + 1.0 / 16.0) < 1e-13);
    CHECK(max_abs(c.rhs1 + 1.0 / 16.0) < 1e-13);
    CHECK(c.r1 < 1e-13);
    CHECK(c.r2 < 1e-13);
    // a flipped group term gives A = +i/4, which the Weingarten equations reject
    const ComplexField flipped = hopf_differential(p.s, GroupKind::Nil, p.g, -1.0);
    CHECK(max_abs(flipped - cd(0, 0.25)) < 1e-14);
    CHECK(weingarten_residual(p.s, p.alpha, A, GroupKind::Nil, p.g) < 1e-13);
    CHECK(weingarten_residual(p.s, p.alpha, flipped, GroupKind::Nil, p.g) > 0.1);
    // Ã = -i/4 + (1/i)(-1/4) = 0
    const AbreschResult ab = abresch_differential(A, p.z.z3(), p.H, p.z.conformFactor, GroupKind::Nil, p.g);
    CHECK(max_abs(ab.At) < 1e-14);
    CHECK(ab.dbarSup < 1e-14);
    CHECK(ab.defect < 1e-14);
    for (double r : derivational_residuals(p.z, p.H, GroupKind::Nil, p.g)) CHECK(r < 1e-13);
    const MeanCurvature mc = mean_curvature(p.z, GroupKind::Nil, p.g);
    CHECK(mc.H.abs().maxCoeff() < 1e-13);
  }

  TEST_CASE("vertical Nil plane energy is zero") {
    const VerticalPlane p;
    const PotentialField pot = potentials(p.s, p.H, GroupKind::Nil);
    CHECK(std::abs(energy(pot, p.g)) < 1e-15);
    const RealField K = tangent_plane_curvature_field(normal_frame(p.s), GroupKind::Nil);
    // normal e1 spans the plane e2 ^ e3: K̂ = K23 = 1/4
    CHECK((K - 0.25).abs().maxCoeff() < 1e-15);
    const GeometricEnergy ge = energy_geometric(p.H, K, p.z.conformFactor, p.s, GroupKind::Nil, p.g);
    CHECK(std::abs(ge.value) < 1e-15);
    CHECK(ge.maxRelDiff < 1e-15);
  }

  TEST_CASE("property: spinor and geometric energy densities agree algebraically") {
    // e^{2α} = (|ψ₁|²+|ψ₂|²)², K̂ from the spinor normal; any H
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> hd(-2.0, 2.0);
    const Grid g = Grid::open(10, 10, -1, 1, -1, 1);
    for (unsigned seed = 1; seed <= 6; ++seed) {
      const SpinorField s = testing::smooth_spinor(g, seed);
      RealField H(g.size());
      for (auto& h : H) h = hd(rng);
      const RealField e2a = (s.psi1.abs2() + s.psi2.abs2()).square();
      for (GroupKind k : {GroupKind::Nil, GroupKind::SL2}) {
        const RealField K = tangent_plane_curvature_field(normal_frame(s), k);
        const GeometricEnergy ge = energy_geometric(H, K, e2a, s, k, g);
        CHECK(ge.maxRelDiff < 1e-13);
        // the real part of UV is the spinor density
        const PotentialField p = potentials(s, H, k);
        CHECK(((p.U * p.V).real() - energy_density_spinor(s, H, k)).abs().maxCoeff() < 1e-13);
      }
    }
    const SpinorField s = testing::smooth_spinor(g, 1);
    CHECK_THROWS_AS(energy_density_spinor(s, RealField::Zero(g.size()), GroupKind::Sol),
                    GroupUnsupported);
  }

  TEST_CASE("CMC consistency flags") {
    Grid g = Grid::open(16, 16, 0, 1, 0, 1);
    const RealField flat = RealField::Constant(g.size(), 0.3);
    CmcReport r = cmc_check(flat, 1e-9, g);
    CHECK(r.holomorphic);
    CHECK(r.constantH);
    CHECK(r.consistent);
    RealField bumpy = flat;
    bumpy[g.index(8, 8)] += 0.1;
    r = cmc_check(bumpy, 1e-9, g);
    CHECK(r.holomorphic);
    CHECK_FALSE(r.constantH);
    CHECK_FALSE(r.consistent);
    r = cmc_check(bumpy, 0.5, g);
    CHECK(r.consistent);
    // variation confined to the boundary band is ignored
    RealField edge = flat;
    edge[g.index(0, 5)] = 9.0;
    CHECK(cmc_check(edge, 0.0, g).constantH);
  }

  TEST_CASE("nabla_fields reproduces the connection table") {
    const LieGroup3 nil = LieGroup3::nil();
    const ConnectionTable conn = connection_from_structure(nil);
    CVec3Field e1, e2;
    for (int c = 0; c < 3; ++c) {
      e1[c] = ComplexField::Constant(2, c == 0 ? 1.0 : 0.0);
      e2[c] = ComplexField::Constant(2, c == 1 ? 1.0 : 0.0);
    }
    // ∇_{e1} e2 = ½ e3
    const CVec3Field r = nabla_fields(conn, e1, e2);
    CHECK(std::abs(r[0][1]) < 1e-15);
    CHECK(std::abs(r[1][1]) < 1e-15);
    CHECK(std::abs(r[2][1] - 0.5) < 1e-15);
  }
}
