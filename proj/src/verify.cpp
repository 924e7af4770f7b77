#include "spinorsurf/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

namespace {

struct SurfaceRun {
  CatalogEntry entry;
  std::vector<GeometryReport> reports;  // one per level
};

bool is_sol(const CatalogEntry& e) { return e.kind == GroupKind::Sol; }

class Checker {
 public:
  explicit Checker(VerifySummary& s) : s_(s) {}

  void at_most(const std::string& surface, const std::string& check, double value, double tol) {
    s_.checks.push_back({surface, check, value, tol, "<=", value <= tol});
  }
  void at_least(const std::string& surface, const std::string& check, double value, double tol) {
    s_.checks.push_back({surface, check, value, tol, ">=", value >= tol});
  }

 private:
  VerifySummary& s_;
};

// Residuals whose convergence order is thresholded, with the required order.
std::map<std::string, double> order_thresholds(const CatalogEntry& e, const GeometryReport& finest,
                                               const VerifyThresholds& t) {
  std::map<std::string, double> need;
  auto want = [&](const std::string& r, double order) { need[r] = order; };
  want("dirac", t.diracOrder);
  for (const char* r : {"conformality", "spinorNorm", "normal", "roundTrip", "holonomy"})
    want(r, t.smoothOrder);
  if (e.expectedMinimal) {
    want("minimalH", t.smoothOrder);
    want("minimal", t.smoothOrder);
  }
  for (const char* r : {"identity", "weingarten", "codazzi1", "codazzi2"}) want(r, t.residualOrder);
  for (int k = 1; k <= 7; ++k) {
    const std::string r = "derivational" + std::to_string(k);
    if (finest.residualNorms.count(r)) want(r, t.residualOrder);
  }
  if (!is_sol(e)) {
    want("abresch", t.residualOrder);
    if (e.expectedMinimal || (finest.cmc && finest.cmc->constantH)) {
      want("abreschHolomorphy", t.residualOrder);
    }
  }
  return need;
}

void check_surface(const SurfaceRun& run, const VerifyConfig& cfg, VerifySummary& out) {
  const VerifyThresholds& t = cfg.thresholds;
  const std::string& name = run.entry.name;
  Checker ck(out);

  bool complete = true;
  for (const GeometryReport& r : run.reports) {
    if (r.partial) {
      ck.at_most(name, "analysis n=" + std::to_string(r.grid.nu) + ": " + r.error, 1.0, 0.0);
      complete = false;
    }
  }
  if (!complete) return;

  const GeometryReport& finest = run.reports.back();
  const std::map<std::string, double> need = order_thresholds(run.entry, finest, t);

  // convergence rows for every reported residual, orders checked where required
  std::set<std::string> residuals;
  for (const auto& r : run.reports)
    for (const auto& kv : r.residualNorms) residuals.insert(kv.first);
  for (const std::string& res : residuals) {
    std::vector<std::pair<double, double>> levels;
    bool everywhere = true;
    for (const auto& r : run.reports) {
      auto it = r.residualNorms.find(res);
      if (it == r.residualNorms.end()) {
        everywhere = false;
        break;
      }
      levels.emplace_back(r.grid.hu, it->second);
    }
    if (!everywhere) continue;
    const ConvergenceResult cr = convergence_order(levels, cfg.floor);
    for (const auto& [h, v] : levels) out.rows.push_back({name, res, h, v, cr});
    auto it = need.find(res);
    if (it != need.end()) ck.at_least(name, res + ".order", cr.order, it->second);
  }
  for (const auto& [res, order] : need) {
    if (!residuals.count(res)) ck.at_least(name, res + ".order (missing)", 0.0, order);
  }

  for (const auto& r : run.reports) {
    const std::string at = " n=" + std::to_string(r.grid.nu);
    ck.at_most(name, "normalUnit" + at, r.residualNorms.at("normalUnit"), t.normalUnitTol);
    if (!is_sol(run.entry)) {
      ck.at_most(name, "energyEquivalence" + at, r.residualNorms.at("energyEquivalence"),
                 t.energyRelTol);
      // a holomorphic Abresch differential with nonconstant H must never be reported
      const bool bad = r.cmc && r.cmc->holomorphic && !r.cmc->constantH;
      ck.at_most(name, "cmcConsistency" + at, bad ? 1.0 : 0.0, 0.0);
    }
    if (name == "nil-plane-x0" || name == "sol-plane-z0") {
      ck.at_most(name, "dirac" + at, r.residualNorms.at("dirac"), t.exactTol);
      ck.at_most(name, "energyZero" + at, std::abs(r.energy), t.energyZeroTol);
    }
    if (name == "nil-plane-x0") {
      ck.at_most(name, "codazziBalanceLhs" + at, std::abs(r.codazziLhs1 + 1.0 / 16.0), t.exactTol);
      ck.at_most(name, "codazziBalanceRhs" + at, std::abs(r.codazziRhs1 + 1.0 / 16.0), t.exactTol);
    }
  }
  for (const char* o : {"hopfOracle", "meanCurvatureOracle"}) {
    auto it = finest.residualNorms.find(o);
    if (it != finest.residualNorms.end()) ck.at_most(name, o, it->second, t.oracleTol);
  }
  out.energies[name] = finest.energy;
}

void check_periodic(const CatalogEntry& e, const VerifyConfig& cfg, VerifySummary& out) {
  AnalyzeOptions opt;
  opt.nu = opt.nv = cfg.levels.back();
  opt.periodic = true;
  opt.faults = cfg.faults;
  const GeometryReport r = analyze(e, opt);
  Checker ck(out);
  if (r.partial) {
    ck.at_most(e.name, "periodic analysis: " + r.error, 1.0, 0.0);
    return;
  }
  out.periodic.push_back({e.name, opt.nu, r.energy, r.normalFlux, r.area});
  if (is_sol(e)) return;  // complex energy, no reality assertion
  const double tol = cfg.thresholds.realityTol;
  ck.at_most(e.name, "periodic.imagEnergy", std::abs(r.energy.imag()),
             tol * (1.0 + std::abs(r.energy.real())));
  ck.at_most(e.name, "periodic.normalFlux", std::abs(r.normalFlux), tol * r.area);
  ck.at_most(e.name, "periodic.dirac", r.residualNorms.at("dirac"), tol);
}

}  // namespace

std::vector<CheckResult> VerifySummary::failures() const {
  std::vector<CheckResult> f;
  for (const auto& c : checks)
    if (!c.passed) f.push_back(c);
  return f;
}

VerifySummary verify(const VerifyConfig& config) {
  VerifySummary out;
  out.levels = config.levels;
  std::vector<CatalogEntry> entries;
  try {
    if (config.levels.size() < 3) {
      throw InsufficientLevels("need at least 3 refinement levels, got " +
                               std::to_string(config.levels.size()));
    }
    for (std::size_t k = 1; k < config.levels.size(); ++k) {
      if (config.levels[k] <= config.levels[k - 1]) {
        throw InvalidGrid("refinement levels must increase");
      }
    }
    const auto& names = config.surfaces.empty() ? catalog_names() : config.surfaces;
    for (const auto& n : names) entries.push_back(catalog_entry(n));
  } catch (const Error& e) {
    out.error = e.what();
    out.exitCode = 2;
    return out;
  }

  for (const CatalogEntry& e : entries) {
    SurfaceRun run{e, {}};
    for (int n : config.levels) {
      AnalyzeOptions opt;
      opt.nu = opt.nv = n;
      opt.interiorMargin = config.interiorMargin;
      opt.faults = config.faults;
      run.reports.push_back(analyze(e, opt));
    }
    check_surface(run, config, out);
    if (config.periodicChecks && e.periodicDomain) check_periodic(e, config, out);
  }
  out.exitCode = out.failures().empty() ? 0 : 1;
  return out;
}

std::string convergence_csv(const VerifySummary& s) {
  std::string csv = "surface,residual,h,value,order\n";
  char buf[256];
  for (const auto& r : s.rows) {
    char order[32];
    if (r.order.floored) {
      std::snprintf(order, sizeof order, "floored");
    } else {
      std::snprintf(order, sizeof order, "%.4f", r.order.order);
    }
    std::snprintf(buf, sizeof buf, "%s,%s,%.10e,%.10e,%s\n", r.surface.c_str(),
                  r.residual.c_str(), r.h, r.value, order);
    csv += buf;
  }
  return csv;
}

}  // namespace spinorsurf
