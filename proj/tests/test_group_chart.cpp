#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "spinorsurf/errors.hpp"
#include "spinorsurf/group_chart.hpp"
#include "spinorsurf/lie_group.hpp"

using namespace spinorsurf;

namespace {

const GroupKind kAll[] = {GroupKind::Nil, GroupKind::SL2, GroupKind::Sol};

Eigen::Vector3d random_vec(std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng)};
}

// exp via Eigen's Padé evaluator, used as the oracle for the closed forms.
ChartMatrix pade_exp(GroupKind kind, const Eigen::Vector3d& v) {
  const ChartMatrix x = algebra_matrix(kind, v.cast<cdouble>());
  if (kind == GroupKind::SL2) {
    const Eigen::Matrix2cd b = x.topLeftCorner<2, 2>();
    ChartMatrix m = ChartMatrix::Identity();
    m.topLeftCorner<2, 2>() = b.exp();
    return m;
  }
  return x.exp();
}

}  // namespace

TEST_SUITE("group_chart") {
  TEST_CASE("generators reproduce the structure constants") {
    for (GroupKind k : kAll) {
      const LieGroup3 g = LieGroup3::make(k);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const ChartMatrix ei = generator(k, i), ej = generator(k, j);
          const Eigen::Vector3cd br = algebra_coords(k, ei * ej - ej * ei);
          for (int m = 0; m < 3; ++m) {
            CHECK(br[m].real() == doctest::Approx(to_double(g.c(m, i, j))));
            CHECK(std::abs(br[m].imag()) < 1e-15);
          }
        }
    }
  }

  TEST_CASE("algebra coordinates invert algebra_matrix") {
    std::mt19937 rng(3);
    for (GroupKind k : kAll) {
      for (int t = 0; t < 20; ++t) {
        const Eigen::Vector3cd v = random_vec(rng).cast<cdouble>() +
                                   cdouble(0, 1) * random_vec(rng).cast<cdouble>();
        CHECK((algebra_coords(k, algebra_matrix(k, v)) - v).norm() < 1e-14);
      }
    }
  }

  TEST_CASE("closed-form exponential matches the Padé exponential") {
    std::mt19937 rng(11);
    for (GroupKind k : kAll) {
      for (int t = 0; t < 25; ++t) {
        const Eigen::Vector3d v = random_vec(rng, 2.0);
        const GroupElement g = group_exp(k, v);
        CHECK((g.m - pade_exp(k, v)).norm() < 1e-12 * (1.0 + g.m.norm()));
      }
      // near-zero arguments exercise the series branches
      const Eigen::Vector3d tiny(1e-9, -2e-9, 3e-10);
      CHECK((group_exp(k, tiny).m - pade_exp(k, tiny)).norm() < 1e-15);
    }
  }

  TEST_CASE("Nil product law in coordinates") {
    const GroupElement a = nil_element(1.0, 2.0, 3.0), b = nil_element(-0.5, 4.0, 1.5);
    const GroupElement p = group_mul(a, b);
    // (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')
    CHECK(p.m(0, 1).real() == doctest::Approx(0.5));
    CHECK(p.m(1, 2).real() == doctest::Approx(6.0));
    CHECK(p.m(0, 2).real() == doctest::Approx(3.0 + 1.5 + 1.0 * 4.0));
  }

  TEST_CASE("inverse, associativity and one-parameter subgroups") {
    std::mt19937 rng(5);
    for (GroupKind k : kAll) {
      for (int t = 0; t < 20; ++t) {
        const GroupElement a = group_exp(k, random_vec(rng));
        const GroupElement b = group_exp(k, random_vec(rng));
        const GroupElement c = group_exp(k, random_vec(rng));
        CHECK(chart_distance(group_mul(a, group_inv(a)), identity_element(k)) < 1e-13);
        CHECK(chart_distance(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))) < 1e-12);
        const Eigen::Vector3d v = random_vec(rng);
        CHECK(chart_distance(group_mul(group_exp(k, 0.3 * v), group_exp(k, 0.7 * v)),
                             group_exp(k, v)) < 1e-13);
        CHECK(chart_invariant_defect(a) < 1e-13);
      }
    }
  }

  TEST_CASE("singular and non-finite elements are rejected") {
    GroupElement bad = identity_element(GroupKind::SL2);
    bad.m(0, 0) = 0.0;
    bad.m(1, 1) = 0.0;
    bad.m(0, 1) = 0.0;
    CHECK_THROWS_AS(group_inv(bad), SingularElement);
    GroupElement nan = nil_element(std::nan(""), 0, 0);
    CHECK_THROWS_AS(group_inv(nan), SingularElement);
    GroupElement sol = identity_element(GroupKind::Sol);
    sol.m(0, 0) = 0.0;
    CHECK_THROWS_AS(group_inv(sol), SingularElement);
  }

  TEST_CASE("renormalize projects drift back onto the group") {
    GroupElement g = group_exp(GroupKind::SL2, {0.3, -0.2, 0.9});
    g.m.topLeftCorner<2, 2>() *= 1.001;
    CHECK(chart_invariant_defect(g) > 1e-4);
    renormalize(g);
    CHECK(chart_invariant_defect(g) < 1e-14);
    GroupElement n = nil_element(1, 2, 3);
    n.m(1, 0) = 1e-3;
    renormalize(n);
    CHECK(chart_invariant_defect(n) == 0.0);
  }

  TEST_CASE("SL2 fiber winding is tracked beyond one turn") {
    // m00 = e^{it/4} for exp(t e3); the fiber angle 2 arg m00 = t/2 leaves the
    // principal range (−2π, 2π] once t > 4π
    const double t = 5.0 * std::numbers::pi + 0.25;
    const GroupElement g = group_exp(GroupKind::SL2, {0.0, 0.0, t});
    CHECK(g.windingAngle == doctest::Approx(0.5 * t));
    const double big = 18.0 * std::numbers::pi;
    GroupElement acc = identity_element(GroupKind::SL2);
    const GroupElement step = group_exp(GroupKind::SL2, {0.0, 0.0, big / 40.0});
    for (int k = 0; k < 40; ++k) acc = group_mul(acc, step);
    CHECK(acc.windingAngle == doctest::Approx(0.5 * big));
    CHECK(chart_distance(acc, group_exp(GroupKind::SL2, {0.0, 0.0, big})) < 1e-12);
  }
}
