// spinorsurf command line: group tables, surface analysis, reconstruction and
// the convergence suite.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinorsurf/analyze.hpp"
#include "spinorsurf/errors.hpp"
#include "spinorsurf/io.hpp"
#include "spinorsurf/reconstruct.hpp"
#include "spinorsurf/verify.hpp"

using namespace spinorsurf;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int groups_show(const std::string& name) {
  std::cout << group_json(parse_group(name)).dump(2) << "\n";
  return kPass;
}

struct AnalyzeArgs {
  std::string group, surface, report, spinorOut;
  int nu = 64, nv = 64;
  std::optional<double> umin, umax, vmin, vmax;
  bool dumpFields = false, periodic = false, closedForm = false, noReconstruct = false;
  double radius = 1.0;
  double margin = 0.15;
};

int run_analyze(const AnalyzeArgs& a) {
  CatalogParams params;
  params.radius = a.radius;
  const CatalogEntry entry = catalog_entry(a.surface, params);
  const GroupKind kind = parse_group(a.group);
  if (kind != entry.kind) {
    throw UsageError(a.surface + " lives in " + std::string(to_string(entry.kind)) + ", not " +
                     std::string(to_string(kind)));
  }
  AnalyzeOptions opt;
  opt.nu = a.nu;
  opt.nv = a.nv;
  opt.periodic = a.periodic;
  opt.closedFormZ = a.closedForm;
  opt.reconstruct = !a.noReconstruct;
  opt.interiorMargin = a.margin;
  opt.params = params;
  if (a.umin || a.umax || a.vmin || a.vmax) {
    if (a.periodic) throw UsageError("--periodic uses the entry's own period cell");
    Domain d = entry.domain;
    if (a.umin) d.umin = *a.umin;
    if (a.umax) d.umax = *a.umax;
    if (a.vmin) d.vmin = *a.vmin;
    if (a.vmax) d.vmax = *a.vmax;
    opt.domain = d;
  }
  const GeometryReport rep = analyze(entry, opt);
  const Json doc = report_json(rep, a.dumpFields);
  if (a.report.empty() || a.report == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_text_file(a.report, doc.dump(2));
  }
  if (!a.spinorOut.empty() && !rep.partial) write_text_file(a.spinorOut, spinor_json(rep).dump());
  if (rep.partial) {
    std::cerr << "analysis incomplete: " << rep.error << "\n";
    return kFail;
  }
  std::fprintf(stderr, "%s (%s) %dx%d area %.6g energy (%.6g, %.6g) mean H %.6g\n",
               rep.surface.c_str(), a.group.c_str(), rep.grid.nu, rep.grid.nv, rep.area,
               rep.energy.real(), rep.energy.imag(), rep.meanHmean);
  return kPass;
}

int run_reconstruct(const std::string& input, const std::string& group, const std::string& origin,
                    const std::string& out) {
  const SpinorInput in = spinor_from_json(read_json_file(input));
  if (parse_group(group) != in.kind) {
    throw UsageError("input spinor belongs to " + std::string(to_string(in.kind)));
  }
  if (origin != "identity") throw UsageError("only --origin identity is supported");
  const ZField z = Z_from_spinor(in.spinor);
  const ReconstructionResult rr = integrate_frame(z, in.kind, in.grid, identity_element(in.kind));
  write_text_file(out, immersion_json(rr, in.grid).dump());
  std::fprintf(stderr, "reconstructed %dx%d nodes, holonomy %.3e\n", in.grid.nu, in.grid.nv,
               rr.holonomyNorm);
  return kPass;
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const int n = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(n);
    } catch (const std::logic_error&) {
      throw UsageError("bad refinement level '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int run_verify(const std::string& levels, const std::string& csv, const std::string& json,
               const std::vector<std::string>& surfaces, const std::string& fault, bool quiet) {
  VerifyConfig cfg;
  cfg.levels = parse_levels(levels);
  cfg.surfaces = surfaces;
  if (fault == "flip-hopf") {
    cfg.faults.flipHopfSign = true;
  } else if (fault == "negate-z3") {
    cfg.faults.negateZ3 = true;
  } else if (fault == "random-psi") {
    cfg.faults.randomPsi = true;
  } else if (!fault.empty()) {
    throw UsageError("unknown fault '" + fault + "'");
  }
  const VerifySummary s = verify(cfg);
  if (!csv.empty()) write_text_file(csv, convergence_csv(s));
  if (!json.empty()) write_text_file(json, summary_json(s).dump(2));
  if (!s.error.empty()) {
    std::cerr << s.error << "\n";
    return s.exitCode;
  }
  if (!quiet) {
    for (const auto& c : s.checks) {
      if (!c.passed) {
        std::printf("FAIL %-14s %-32s %.3e %s %.3e\n", c.surface.c_str(), c.check.c_str(),
                    c.value, c.comparator.c_str(), c.threshold);
      }
    }
  }
  std::printf("%zu checks, %zu failed\n", s.checks.size(), s.failures().size());
  return s.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinor representation of surfaces in Nil, SL2 and Sol"};
  app.require_subcommand(1);

  auto* groups = app.add_subcommand("groups", "structure tables of the model groups");
  groups->require_subcommand(1);
  std::string groupName;
  auto* show = groups->add_subcommand("show", "print constants, connection and curvature as JSON");
  show->add_option("group", groupName, "nil, sl2 or sol")->required();

  AnalyzeArgs aa;
  auto* an = app.add_subcommand("analyze", "run the full pipeline on a catalog surface");
  an->add_option("--group", aa.group, "nil, sl2 or sol")->required();
  an->add_option("--surface", aa.surface, "catalog entry")->required();
  an->add_option("--nu", aa.nu, "nodes along u");
  an->add_option("--nv", aa.nv, "nodes along v");
  an->add_option("--umin", aa.umin);
  an->add_option("--umax", aa.umax);
  an->add_option("--vmin", aa.vmin);
  an->add_option("--vmax", aa.vmax);
  an->add_option("--radius", aa.radius, "nil-cylinder radius");
  an->add_option("--margin", aa.margin, "fraction of each side left out of residual norms");
  an->add_flag("--dump-fields", aa.dumpFields, "include node fields in the report");
  an->add_flag("--periodic", aa.periodic, "analyze on the entry's period cell");
  an->add_flag("--closed-form", aa.closedForm, "take Z from the closed tangents");
  an->add_flag("--no-reconstruct", aa.noReconstruct, "skip the frame integration");
  an->add_option("--report", aa.report, "report path ('-' for stdout)")->required();
  an->add_option("--spinor-out", aa.spinorOut, "write the spinor for `reconstruct`");

  std::string input, rgroup, origin = "identity", out;
  auto* rc = app.add_subcommand("reconstruct", "integrate an immersion from a spinor field");
  rc->add_option("--input", input, "spinor JSON")->required()->check(CLI::ExistingFile);
  rc->add_option("--group", rgroup)->required();
  rc->add_option("--origin", origin, "base point (identity)");
  rc->add_option("--out", out, "immersion JSON")->required();

  std::string levels = "32,64,128", csv, json, fault;
  std::vector<std::string> surfaces;
  bool quiet = false;
  auto* vf = app.add_subcommand("verify", "convergence suite over the catalog");
  vf->add_option("--levels", levels, "comma separated grid sizes");
  vf->add_option("--csv", csv, "convergence table");
  vf->add_option("--json", json, "summary");
  vf->add_option("--surface", surfaces, "restrict to these entries");
  vf->add_option("--fault", fault, "negative control: flip-hopf, negate-z3 or random-psi");
  vf->add_flag("--quiet", quiet, "only print the totals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*show) return groups_show(groupName);
    if (*an) return run_analyze(aa);
    if (*rc) return run_reconstruct(input, rgroup, origin, out);
    if (*vf) return run_verify(levels, csv, json, surfaces, fault, quiet);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownSurface& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const GroupUnsupported& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
