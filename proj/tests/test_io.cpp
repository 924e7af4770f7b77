#include <doctest.h>

#include "spinorsurf/errors.hpp"
#include "spinorsurf/io.hpp"
#include "support.hpp"

using namespace spinorsurf;
using cd = std::complex<double>;

TEST_SUITE("io") {
  TEST_CASE("complex numbers and rationals") {
    const Json j = to_json(cd(1.5, -2.0));
    CHECK(j.dump() == "[1.5,-2.0]");
    CHECK(complex_from_json(j) == cd(1.5, -2.0));
    CHECK(to_json(Rational(-3, 4)) == Json({{"num", -3}, {"den", 4}}));
  }

  TEST_CASE("grid and field round trips") {
    Grid g = Grid::make(10, 9, 0.0, 3.0, -1.0, 1.0, true, false);
    g.boundaryBand = 1;
    const Grid back = grid_from_json(Json::parse(to_json(g).dump()));
    CHECK(back.nu == 10);
    CHECK(back.nv == 9);
    CHECK(back.periodicU);
    CHECK_FALSE(back.periodicV);
    CHECK(back.hu == g.hu);
    CHECK(back.v0 == g.v0);

    const SpinorField s = testing::smooth_spinor(g, 2);
    const ComplexField f = complex_field_from_json(Json::parse(field_json(s.psi1, g).dump()), g);
    CHECK((f - s.psi1).abs().maxCoeff() == 0.0);
    const RealField r = s.psi2.abs2();
    CHECK((real_field_from_json(field_json(r, g), g) - r).abs().maxCoeff() == 0.0);
    const Grid other = Grid::open(12, 12, 0, 1, 0, 1);
    CHECK_THROWS_AS(complex_field_from_json(field_json(s.psi1, g), other), ShapeMismatch);
  }

  TEST_CASE("group document carries exact curvature") {
    const Json j = group_json(GroupKind::Nil);
    CHECK(j.at("group") == "nil");
    CHECK(j.at("curvature").at("R1212") == Json({{"num", -3}, {"den", 4}}));
    CHECK(j.at("curvature").at("R2323") == Json({{"num", 1}, {"den", 4}}));
    CHECK(j.at("sectionalCurvature").at("K12").get<double>() == doctest::Approx(-0.75));
    const Json sl = group_json(GroupKind::SL2);
    CHECK(sl.at("curvature").at("R1212") == Json({{"num", -4}, {"den", 1}}));
  }

  TEST_CASE("spinor documents") {
    const Grid g = Grid::open(8, 8, 0, 1, 0, 1);
    const SpinorField s = testing::smooth_spinor(g, 5);
    const Json doc = {{"group", "sl2"},
                      {"grid", to_json(g)},
                      {"psi1", field_json(s.psi1, g)},
                      {"psi2", field_json(s.psi2, g)}};
    const SpinorInput in = spinor_from_json(doc);
    CHECK(in.kind == GroupKind::SL2);
    CHECK((in.spinor.psi2 - s.psi2).abs().maxCoeff() == 0.0);
    CHECK(in.H.abs().maxCoeff() == 0.0);

    Json missing = doc;
    missing.erase("psi2");
    CHECK_THROWS_AS(spinor_from_json(missing), ShapeMismatch);
    Json shortField = doc;
    shortField["psi1"]["data"].erase(0);
    CHECK_THROWS_AS(spinor_from_json(shortField), ShapeMismatch);
    Json wrongType = doc;
    wrongType["psi1"] = "not a field";
    CHECK_THROWS_AS(spinor_from_json(wrongType), ShapeMismatch);
  }
}
