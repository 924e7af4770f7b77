#include <doctest.h>

#include <cmath>

#include "spinorsurf/analyze.hpp"
#include "spinorsurf/catalog.hpp"

using namespace spinorsurf;

namespace {

double norm(const GeometryReport& r, const std::string& key) {
  const auto it = r.residualNorms.find(key);
  REQUIRE_MESSAGE(it != r.residualNorms.end(), "missing residual ", key);
  return it->second;
}

}  // namespace

TEST_SUITE("analyze") {
  TEST_CASE("vertical Nil plane: every residual at round-off and zero energy") {
    const GeometryReport r = analyze(catalog_entry("nil-plane-x0"));
    REQUIRE_FALSE(r.partial);
    CHECK(r.area == doctest::Approx(4.0));
    for (const auto& [key, value] : r.residualNorms) {
      if (key == "minimalAlternate") continue;  // the alternate sign reading is not an identity
      CHECK_MESSAGE(value <= 1e-11, key, " = ", value);
    }
    CHECK(std::abs(r.energy) <= 1e-12);
    REQUIRE(r.energyGeo.has_value());
    CHECK(std::abs(*r.energyGeo) <= 1e-12);
    CHECK(std::abs(r.codazziLhs1 + 1.0 / 16.0) < 1e-11);
    CHECK(std::abs(r.codazziRhs1 + 1.0 / 16.0) < 1e-11);
    CHECK(r.meanHvar < 1e-12);
  }

  TEST_CASE("horizontal Sol plane: fully degenerate, zero potentials") {
    const GeometryReport r = analyze(catalog_entry("sol-plane-z0"));
    REQUIRE_FALSE(r.partial);
    CHECK(r.potentials.degenerateMask.all());
    CHECK(norm(r, "dirac") <= 1e-12);
    CHECK(r.energy == std::complex<double>(0.0));
    CHECK_FALSE(r.energyGeo.has_value());
  }

  TEST_CASE("Nil cylinder: constant H and consistent CMC flags") {
    AnalyzeOptions opt;
    opt.params.radius = 1.0;
    const GeometryReport r = analyze(catalog_entry("nil-cylinder", opt.params), opt);
    REQUIRE_FALSE(r.partial);
    CHECK(std::abs(r.meanHmean) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.meanHvar < 1e-6);
    REQUIRE(r.cmc.has_value());
    CHECK(r.cmc->constantH);
    CHECK(r.cmc->consistent);
    CHECK(norm(r, "hopfOracle") < 1e-6);
    CHECK(norm(r, "meanCurvatureOracle") < 1e-6);
    CHECK(norm(r, "normalUnit") < 1e-10);
  }

  TEST_CASE("periodic Nil cylinder: real energy and balanced normal flux") {
    AnalyzeOptions opt;
    opt.periodic = true;
    opt.nu = opt.nv = 32;
    const GeometryReport r = analyze(catalog_entry("nil-cylinder"), opt);
    REQUIRE_FALSE(r.partial);
    CHECK(std::abs(r.energy.imag()) <= 1e-8 * (1.0 + std::abs(r.energy.real())));
    CHECK(std::abs(r.normalFlux) <= 1e-8 * r.area);
    CHECK(norm(r, "dirac") < 1e-10);
  }

  TEST_CASE("faults corrupt the report") {
    AnalyzeOptions opt;
    opt.faults.flipHopfSign = true;
    const GeometryReport r = analyze(catalog_entry("nil-plane-x0"), opt);
    CHECK(norm(r, "weingarten") > 1e-3);
    CHECK(norm(r, "hopfOracle") > 1e-3);
    AnalyzeOptions noise;
    noise.faults.randomPsi = true;
    const GeometryReport n = analyze(catalog_entry("nil-plane-z0"), noise);
    CHECK(n.residualNorms.at("dirac") > 1e-3);
  }

  TEST_CASE("errors become partial reports") {
    AnalyzeOptions opt;
    opt.domain = Domain{-1.0, 1.0, -1.0, 1.0};  // t <= 0 leaves the chart
    const GeometryReport r = analyze(catalog_entry("sol-plane-x0"), opt);
    CHECK(r.partial);
    CHECK(r.error.find("DomainViolation") != std::string::npos);
    AnalyzeOptions tiny;
    tiny.nu = tiny.nv = 3;
    CHECK(analyze(catalog_entry("nil-plane-x0"), tiny).partial);
  }
}
