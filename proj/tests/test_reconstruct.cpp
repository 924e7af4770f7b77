#include <doctest.h>

#include <cmath>
#include <random>

#include "spinorsurf/catalog.hpp"
#include "spinorsurf/errors.hpp"
#include "spinorsurf/reconstruct.hpp"

using namespace spinorsurf;

namespace {

double max_distance(const ImmersionField& a, const ImmersionField& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.elements.size(); ++k)
    d = std::max(d, chart_distance(a.elements[k], b.elements[k]));
  return d;
}

GroupElement origin_of(const CatalogEntry& e, const Grid& g) { return e.paramMap(g.u(0), g.v(0)); }

}  // namespace

TEST_SUITE("reconstruct") {
  TEST_CASE("constant Nil data is integrated exactly") {
    // e1, e2, e3 generate a nilpotent algebra, so the RK4 step reproduces exp exactly
    const CatalogEntry e = catalog_entry("nil-plane-x0");
    const Grid g = entry_grid(e, 17, 13);
    const ZField zf = closed_form_z(e, g);
    const ReconstructionResult r = integrate_frame(zf, GroupKind::Nil, g, origin_of(e, g));
    CHECK(max_distance(r.immersion, catalog_surface(e, g)) < 1e-13);
    CHECK(r.holonomyNorm < 1e-12);
  }

  TEST_CASE("reconstruction converges to the parameter map") {
    for (const std::string n : {"nil-plane-z0", "nil-cylinder", "sol-plane-x0", "sl2-exp-flat"}) {
      const CatalogEntry e = catalog_entry(n);
      std::vector<double> err;
      for (int m : {16, 32}) {
        const Grid g = entry_grid(e, m, m);
        const ReconstructionResult r = integrate_frame(closed_form_z(e, g), e.kind, g, origin_of(e, g));
        err.push_back(max_distance(r.immersion, catalog_surface(e, g)));
      }
      CHECK_MESSAGE(err[1] < 1e-4, n);
      // fourth order in h up to round-off
      CHECK_MESSAGE((err[1] < 1e-12 || err[0] / err[1] > 8.0), n, " errors ", err[0], " ", err[1]);
    }
  }

  TEST_CASE("property: left translation commutes with reconstruction") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (const std::string& n : catalog_names()) {
      const CatalogEntry e = catalog_entry(n);
      const Grid g = entry_grid(e, 24, 24);
      const ZField zf = closed_form_z(e, g);
      const GroupElement h = group_exp(e.kind, Eigen::Vector3d(d(rng), d(rng), d(rng)));
      const ReconstructionResult a = integrate_frame(zf, e.kind, g, identity_element(e.kind));
      const ReconstructionResult b = integrate_frame(zf, e.kind, g, h);
      double worst = 0.0;
      for (std::size_t k = 0; k < a.immersion.elements.size(); ++k) {
        const GroupElement ha = group_mul(h, a.immersion.elements[k]);
        const double scale = 1.0 + ha.m.norm();
        worst = std::max(worst, chart_distance(ha, b.immersion.elements[k]) / scale);
      }
      CHECK_MESSAGE(worst < 1e-12, n);
      CHECK_MESSAGE(round_trip_error(a.immersion, b.immersion) < 1e-12, n);
    }
  }

  TEST_CASE("holonomy detects incompatible data") {
    const CatalogEntry e = catalog_entry("nil-plane-z0");
    const Grid g = entry_grid(e, 24, 24);
    ZField zf = closed_form_z(e, g);
    CHECK(holonomy_residual(zf, GroupKind::Nil, g).maxCoeff() < 1e-3);
    // a v-dependent rescaling of Z breaks the Maurer-Cartan equation
    for (int j = 0; j < g.nv; ++j)
      for (int i = 0; i < g.nu; ++i)
        for (auto& c : zf.z) c[g.index(i, j)] *= 1.0 + 0.5 * g.v(j);
    CHECK(holonomy_residual(zf, GroupKind::Nil, g).maxCoeff() > 1e-2);
  }

  TEST_CASE("chart blow-up is reported") {
    // X = e3 over u in [0, 500]: the diagonal Sol chart entry e^u passes 1e150
    const Grid g = Grid::open(251, 8, 0.0, 500.0, 0.0, 1.0);
    const std::array<RealField, 3> x{RealField::Zero(g.size()), RealField::Zero(g.size()),
                                     RealField::Constant(g.size(), 1.0)};
    const std::array<RealField, 3> y{RealField::Constant(g.size(), 1.0), RealField::Zero(g.size()),
                                     RealField::Zero(g.size())};
    const ZField zf = z_from_tangents(x, y, g);
    CHECK_THROWS_AS(integrate_frame(zf, GroupKind::Sol, g, identity_element(GroupKind::Sol)),
                    ChartBlowup);
  }

  TEST_CASE("origin must belong to the same group") {
    const CatalogEntry e = catalog_entry("nil-plane-x0");
    const Grid g = entry_grid(e, 12, 12);
    CHECK_THROWS_AS(integrate_frame(closed_form_z(e, g), GroupKind::Nil, g,
                                    identity_element(GroupKind::Sol)),
                    ShapeMismatch);
  }

  TEST_CASE("round trip error of an immersion with itself") {
    const CatalogEntry e = catalog_entry("sl2-exp-flat");
    const Grid g = entry_grid(e, 12, 12);
    const ImmersionField f = catalog_surface(e, g);
    CHECK(round_trip_error(f, f) < 1e-14);
    ImmersionField moved = f;
    for (auto& el : moved.elements) el = group_mul(group_exp(GroupKind::SL2, {0.3, 0.1, -0.7}), el);
    CHECK(round_trip_error(f, moved) < 1e-13);
    moved.elements[30] = group_mul(moved.elements[30], group_exp(GroupKind::SL2, {0.0, 0.01, 0.0}));
    CHECK(round_trip_error(f, moved) > 1e-3);
  }
}
