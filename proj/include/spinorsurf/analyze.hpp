#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "spinorsurf/catalog.hpp"
#include "spinorsurf/geometry.hpp"
#include "spinorsurf/spinor.hpp"

namespace spinorsurf {

/// Deliberate corruptions used as negative controls.
struct FaultInjection {
  bool flipHopfSign = false;  // negate the group term of the Hopf differential
  bool negateZ3 = false;      // negate Z₃ right after extraction
  bool randomPsi = false;     // replace the spinor by seeded noise
  std::uint64_t seed = 12345;

  bool any() const { return flipHopfSign || negateZ3 || randomPsi; }
};

struct AnalyzeOptions {
  int nu = 64, nv = 64;
  std::optional<Domain> domain;
  /// Periodic analysis on the entry's periodicDomain (implies closedFormZ).
  bool periodic = false;
  /// Take Z from the closed tangents instead of differentiating the immersion.
  bool closedFormZ = false;
  bool reconstruct = true;   // round trip and holonomy
  int oracleNodes = 10;      // random nodes for the pointwise oracles (0 disables)
  std::uint64_t oracleSeed = 2024;
  double epsDeg = 1e-9;
  double cmcTol = 1e-4;
  int boundaryBand = 2;
  /// Fraction of each open side excluded from the residual norms. Keeps the
  /// measured subdomain the same across refinement levels; the node band is
  /// the larger of this and boundaryBand.
  double interiorMargin = 0.15;
  CatalogParams params;
  FaultInjection faults;
};

struct GeometryReport {
  std::string surface;
  GroupKind kind = GroupKind::Nil;
  Grid grid;
  double area = 0.0;
  RealField meanH;
  Vec3Field normal;
  ComplexField hopfA, abreschA;
  RealField Khat;
  std::complex<double> energy;
  std::optional<double> energyGeo;
  double meanHmean = 0.0, meanHvar = 0.0;
  std::optional<CmcReport> cmc;
  /// Pointwise first Codazzi equation at the interior node closest to the centre.
  std::complex<double> codazziLhs1, codazziRhs1;
  /// ∫ (|ψ₂|⁴ − |ψ₁|⁴) du dv.
  double normalFlux = 0.0;
  std::map<std::string, double> residualNorms;
  ZField z;
  SpinorField spinor;
  PotentialField potentials;
  bool partial = false;
  std::string error;
};

/// Full pipeline immersion → Z → ψ → H → potentials → residuals → energies.
/// Errors from submodules are caught and reported with partial = true.
GeometryReport analyze(const CatalogEntry& entry, const AnalyzeOptions& opt = {});

}  // namespace spinorsurf
