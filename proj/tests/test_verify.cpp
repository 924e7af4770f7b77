#include <doctest.h>

#include <cmath>

#include "spinorsurf/verify.hpp"

using namespace spinorsurf;

namespace {

bool tripped(const VerifySummary& s, const std::string& surface, const std::string& check) {
  for (const CheckResult& c : s.failures())
    if (c.surface == surface && c.check.find(check) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("bad level lists are usage errors") {
    VerifyConfig c;
    c.levels = {32};
    VerifySummary s = verify(c);
    CHECK(s.exitCode == 2);
    CHECK(s.error.find("InsufficientLevels") != std::string::npos);
    c.levels = {64, 32, 128};
    s = verify(c);
    CHECK(s.exitCode == 2);
    CHECK(s.error.find("InvalidGrid") != std::string::npos);
    c.levels = {16, 32, 64};
    c.surfaces = {"nil-torus"};
    CHECK(verify(c).exitCode == 2);
  }

  TEST_CASE("small clean run passes and is deterministic") {
    VerifyConfig c;
    c.levels = {24, 48, 96};
    c.surfaces = {"nil-plane-x0", "nil-plane-z0"};
    const VerifySummary a = verify(c);
    for (const CheckResult& f : a.failures())
      MESSAGE(f.surface, " ", f.check, " = ", f.value, " vs ", f.threshold);
    CHECK(a.exitCode == 0);
    CHECK_FALSE(a.rows.empty());
    const VerifySummary b = verify(c);
    CHECK(convergence_csv(a) == convergence_csv(b));
    CHECK(convergence_csv(a).rfind("surface,residual,h,value,order\n", 0) == 0);
  }

  TEST_CASE("Hopf sign fault on the vertical Nil plane trips verify") {
    VerifyConfig c;
    c.levels = {24, 48, 96};
    c.surfaces = {"nil-plane-x0"};
    c.periodicChecks = false;
    c.faults.flipHopfSign = true;
    const VerifySummary s = verify(c);
    CHECK(s.exitCode == 1);
    CHECK(tripped(s, "nil-plane-x0", "weingarten"));
  }

  TEST_CASE("negated Z3 and random spinors trip verify") {
    VerifyConfig c;
    c.levels = {24, 48, 96};
    c.surfaces = {"nil-plane-z0"};
    c.periodicChecks = false;
    c.faults.negateZ3 = true;
    CHECK(verify(c).exitCode == 1);
    c.faults = {};
    c.faults.randomPsi = true;
    CHECK(verify(c).exitCode == 1);
  }
}
