#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinorsurf/analyze.hpp"
#include "spinorsurf/grid.hpp"

namespace spinorsurf {

struct VerifyThresholds {
  double diracOrder = 3.0;
  double smoothOrder = 3.0;     // conformality, spinor norm, normal, minimal, round trip, holonomy
  double residualOrder = 2.0;   // identity, derivational, Weingarten, Codazzi, Abresch
  double exactTol = 1e-11;      // Dirac on constant-spinor entries, Codazzi balance
  double oracleTol = 1e-6;      // Hopf and mean curvature oracles at the finest level
  double energyRelTol = 1e-10;  // spinor vs geometric integrand
  double energyZeroTol = 1e-12;
  double normalUnitTol = 1e-10;
  double realityTol = 1e-8;     // periodic energy reality and normal flux
};

struct VerifyConfig {
  std::vector<int> levels{32, 64, 128};
  std::vector<std::string> surfaces;  // empty: whole catalog
  VerifyThresholds thresholds;
  /// Residuals at or below this are round-off and do not enter order fits.
  double floor = 1e-10;
  double interiorMargin = 0.15;
  bool periodicChecks = true;
  FaultInjection faults;
};

struct ConvergenceRow {
  std::string surface, residual;
  double h = 0.0, value = 0.0;
  ConvergenceResult order;
};

struct CheckResult {
  std::string surface, check;
  double value = 0.0, threshold = 0.0;
  std::string comparator;  // ">=" or "<="
  bool passed = false;
};

struct PeriodicRecord {
  std::string surface;
  int level = 0;
  std::complex<double> energy;
  double normalFlux = 0.0, area = 0.0;
};

struct VerifySummary {
  std::vector<int> levels;
  std::vector<ConvergenceRow> rows;
  std::vector<CheckResult> checks;
  std::vector<PeriodicRecord> periodic;
  std::map<std::string, std::complex<double>> energies;  // finest level
  std::string error;
  int exitCode = 0;

  bool passed() const { return exitCode == 0; }
  std::vector<CheckResult> failures() const;
};

/// Runs every selected catalog entry at each level and applies the thresholds.
/// Never throws for bad configurations; they come back with exitCode 2.
VerifySummary verify(const VerifyConfig& config);

/// conv.csv: surface,residual,h,value,order (order "floored" below the floor).
std::string convergence_csv(const VerifySummary& s);

}  // namespace spinorsurf
