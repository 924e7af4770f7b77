#include <doctest.h>

#include <cmath>
#include <random>

#include "spinorsurf/analyze.hpp"
#include "spinorsurf/catalog.hpp"
#include "spinorsurf/lie_group.hpp"
#include "support.hpp"

using namespace spinorsurf;

TEST_SUITE("properties") {
  TEST_CASE("connection is metric and torsion free on random vectors") {
    std::mt19937 rng(31);
    std::normal_distribution<double> d;
    for (GroupKind k : {GroupKind::Nil, GroupKind::SL2, GroupKind::Sol}) {
      const LieGroup3 g = LieGroup3::make(k);
      const ConnectionTable conn = connection_from_structure(g);
      for (int t = 0; t < 30; ++t) {
        const Eigen::Vector3cd a(d(rng), d(rng), d(rng)), b(d(rng), d(rng), d(rng)),
            c(d(rng), d(rng), d(rng));
        // a⟨b, c⟩ = 0 for left-invariant fields
        CHECK(std::abs(conn.nabla(a, b).dot(c) + b.dot(conn.nabla(a, c))) < 1e-12);
        Eigen::Vector3cd br = Eigen::Vector3cd::Zero();
        for (int m = 0; m < 3; ++m)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) br[m] += to_double(g.c(m, i, j)) * a[i] * b[j];
        CHECK((conn.nabla(a, b) - conn.nabla(b, a) - br).norm() < 1e-12);
      }
    }
  }

  TEST_CASE("every catalog entry: positive area and unit normals") {
    for (const std::string& n : catalog_names()) {
      AnalyzeOptions opt;
      opt.nu = opt.nv = 32;
      opt.reconstruct = false;
      const GeometryReport r = analyze(catalog_entry(n), opt);
      REQUIRE_MESSAGE(!r.partial, n, ": ", r.error);
      CHECK_MESSAGE(r.area > 0.0, n);
      const RealField len =
          (r.normal[0].square() + r.normal[1].square() + r.normal[2].square()).sqrt();
      CHECK_MESSAGE((len - 1.0).abs().maxCoeff() < 1e-10, n);
      if (catalog_entry(n).kind != GroupKind::Sol) {
        CHECK_MESSAGE(r.residualNorms.at("energyEquivalence") < 1e-10, n);
      }
    }
  }

  TEST_CASE("expected minimal entries: sup|H| -> 0 at the scheme order") {
    for (const std::string& n : catalog_names()) {
      const CatalogEntry e = catalog_entry(n);
      if (!e.expectedMinimal) continue;
      std::vector<std::pair<double, double>> lv;
      for (int m : {32, 64, 128}) {
        AnalyzeOptions opt;
        opt.nu = opt.nv = m;
        opt.reconstruct = false;
        opt.oracleNodes = 0;
        const GeometryReport r = analyze(e, opt);
        REQUIRE_FALSE(r.partial);
        lv.emplace_back(r.grid.hu, r.residualNorms.at("minimalH"));
      }
      const ConvergenceResult c = convergence_order(lv, 1e-10);
      CHECK_MESSAGE((c.floored || c.order >= 3.0), n, " order ", c.order, " finest ", lv.back().second);
    }
  }

  TEST_CASE("spinor energy density is invariant under a global phase") {
    // the Nil and SL2 potentials depend on |ψ_k| only
    const Grid g = Grid::open(10, 10, -1, 1, -1, 1);
    const SpinorField s = testing::smooth_spinor(g, 12);
    SpinorField r = s;
    const std::complex<double> ph = std::polar(1.0, 0.7);
    r.psi1 *= ph;
    r.psi2 *= ph;
    const RealField H = RealField::Constant(g.size(), 0.2);
    for (GroupKind k : {GroupKind::Nil, GroupKind::SL2}) {
      const PotentialField a = potentials(s, H, k), b = potentials(r, H, k);
      CHECK(((a.U * a.V) - (b.U * b.V)).abs().maxCoeff() < 1e-13);
    }
  }
}
