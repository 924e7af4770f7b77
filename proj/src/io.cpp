#include "spinorsurf/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

namespace {

std::string label(std::initializer_list<int> idx) {
  std::string s;
  for (int i : idx) s += std::to_string(i + 1);
  return s;
}

// JSON has no inf/nan; orders of floored residuals go out as null.
Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ShapeMismatch("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}}; }

Json to_json(const Grid& g) {
  return {{"nu", g.nu},           {"nv", g.nv},
          {"u0", g.u0},           {"v0", g.v0},
          {"hu", g.hu},           {"hv", g.hv},
          {"periodicU", g.periodicU}, {"periodicV", g.periodicV},
          {"boundaryBand", g.boundaryBand}};
}

Grid grid_from_json(const Json& j) {
  Grid g;
  g.nu = j.at("nu").get<int>();
  g.nv = j.at("nv").get<int>();
  g.u0 = j.at("u0").get<double>();
  g.v0 = j.at("v0").get<double>();
  g.hu = j.at("hu").get<double>();
  g.hv = j.at("hv").get<double>();
  g.periodicU = j.value("periodicU", false);
  g.periodicV = j.value("periodicV", false);
  g.boundaryBand = j.value("boundaryBand", 2);
  g.validate();
  return g;
}

Json field_json(const ComplexField& f, const Grid& g) {
  check_shape(g, f.size(), "field");
  Json data = Json::array();
  for (Eigen::Index k = 0; k < f.size(); ++k) data.push_back(to_json(f[k]));
  return {{"nu", g.nu}, {"nv", g.nv}, {"data", std::move(data)}};
}

Json field_json(const RealField& f, const Grid& g) {
  check_shape(g, f.size(), "field");
  Json data = Json::array();
  for (Eigen::Index k = 0; k < f.size(); ++k) data.push_back(f[k]);
  return {{"nu", g.nu}, {"nv", g.nv}, {"data", std::move(data)}};
}

ComplexField complex_field_from_json(const Json& j, const Grid& g) {
  if (j.at("nu").get<int>() != g.nu || j.at("nv").get<int>() != g.nv) {
    throw ShapeMismatch("field dimensions differ from the grid");
  }
  const Json& d = j.at("data");
  check_shape(g, static_cast<Eigen::Index>(d.size()), "field data");
  ComplexField f(g.size());
  for (Eigen::Index k = 0; k < g.size(); ++k) f[k] = complex_from_json(d[k]);
  return f;
}

RealField real_field_from_json(const Json& j, const Grid& g) {
  if (j.at("nu").get<int>() != g.nu || j.at("nv").get<int>() != g.nv) {
    throw ShapeMismatch("field dimensions differ from the grid");
  }
  const Json& d = j.at("data");
  check_shape(g, static_cast<Eigen::Index>(d.size()), "field data");
  RealField f(g.size());
  for (Eigen::Index k = 0; k < g.size(); ++k) f[k] = d[k].get<double>();
  return f;
}

Json group_json(GroupKind kind) {
  const LieGroup3 grp = LieGroup3::make(kind);
  const ConnectionTable conn = connection_from_structure(grp);
  const CurvatureTensor curv = curvature_tensor(grp, conn);

  Json out;
  out["group"] = std::string(to_string(kind));
  out["basisScale"] = to_json(grp.basisScale);

  Json brackets = Json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!is_zero(grp.c(k, i, j)))
          brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c", to_json(grp.c(k, i, j))}});
  out["structureConstants"] = brackets;

  // ∇_{e_k} e_j = Γ^i_{jk} e_i
  Json gamma = Json::array();
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        if (!is_zero(conn.gamma(i, j, k)))
          gamma.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"gamma", to_json(conn.gamma(i, j, k))}});
  out["connection"] = gamma;

  Json r = Json::object();
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          if (!is_zero(curv.r(l, k, j, i))) r["R" + label({l, k, j, i})] = to_json(curv.r(l, k, j, i));
  out["curvature"] = r;

  Json sec = Json::object();
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      sec["K" + label({a, b})] = sectional_curvature(curv, id.col(a), id.col(b));
  out["sectionalCurvature"] = sec;
  return out;
}

Json report_json(const GeometryReport& r, bool dumpFields) {
  Json out;
  out["surface"] = r.surface;
  out["group"] = std::string(to_string(r.kind));
  out["partial"] = r.partial;
  if (r.partial) out["error"] = r.error;
  out["grid"] = to_json(r.grid);

  Json scalars;
  scalars["area"] = r.area;
  scalars["energy"] = to_json(r.energy);
  scalars["energyGeo"] = r.energyGeo ? Json(*r.energyGeo) : Json(nullptr);
  scalars["meanHmean"] = r.meanHmean;
  scalars["meanHvar"] = r.meanHvar;
  scalars["normalFlux"] = r.normalFlux;
  scalars["codazziLhs1"] = to_json(r.codazziLhs1);
  scalars["codazziRhs1"] = to_json(r.codazziRhs1);
  out["scalars"] = scalars;

  if (r.cmc) {
    out["cmc"] = {{"abreschSup", r.cmc->abreschSup},
                  {"hVariation", r.cmc->hVariation},
                  {"holomorphic", r.cmc->holomorphic},
                  {"constantH", r.cmc->constantH},
                  {"consistent", r.cmc->consistent}};
  }

  Json norms = Json::object();
  for (const auto& [k, v] : r.residualNorms) norms[k] = number_or_null(v);
  out["norms"] = norms;

  if (dumpFields && !r.partial) {
    const Grid& g = r.grid;
    Json f;
    f["meanH"] = field_json(r.meanH, g);
    f["conformFactor"] = field_json(r.z.conformFactor, g);
    for (int c = 0; c < 3; ++c) f["Z" + std::to_string(c + 1)] = field_json(r.z.z[c], g);
    f["psi1"] = field_json(r.spinor.psi1, g);
    f["psi2"] = field_json(r.spinor.psi2, g);
    f["U"] = field_json(r.potentials.U, g);
    f["V"] = field_json(r.potentials.V, g);
    f["hopfA"] = field_json(r.hopfA, g);
    if (r.abreschA.size()) f["abreschA"] = field_json(r.abreschA, g);
    for (int c = 0; c < 3; ++c) f["N" + std::to_string(c + 1)] = field_json(r.normal[c], g);
    f["Khat"] = field_json(r.Khat, g);
    out["fields"] = f;
  }
  return out;
}

Json spinor_json(const GeometryReport& r) {
  return {{"group", std::string(to_string(r.kind))},
          {"surface", r.surface},
          {"grid", to_json(r.grid)},
          {"psi1", field_json(r.spinor.psi1, r.grid)},
          {"psi2", field_json(r.spinor.psi2, r.grid)},
          {"H", field_json(r.meanH, r.grid)}};
}

SpinorInput spinor_from_json(const Json& j) {
  SpinorInput in;
  try {
    in.kind = parse_group(j.at("group").get<std::string>());
    in.grid = grid_from_json(j.at("grid"));
    in.spinor.psi1 = complex_field_from_json(j.at("psi1"), in.grid);
    in.spinor.psi2 = complex_field_from_json(j.at("psi2"), in.grid);
    in.H = j.contains("H") ? real_field_from_json(j.at("H"), in.grid)
                           : RealField::Zero(in.grid.size());
  } catch (const Json::exception& e) {
    throw ShapeMismatch(std::string("malformed spinor document: ") + e.what());
  }
  return in;
}

Json immersion_json(const ReconstructionResult& r, const Grid& g) {
  Json elems = Json::array();
  for (const GroupElement& e : r.immersion.elements) {
    Json m = Json::array();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m.push_back(to_json(e.m(a, b)));
    Json el = {{"m", std::move(m)}};
    if (e.kind == GroupKind::SL2) el["windingAngle"] = e.windingAngle;
    elems.push_back(std::move(el));
  }
  return {{"group", std::string(to_string(r.immersion.kind))},
          {"grid", to_json(g)},
          {"holonomyNorm", r.holonomyNorm},
          {"elements", std::move(elems)}};
}

Json summary_json(const VerifySummary& s) {
  Json out;
  out["passed"] = s.passed();
  out["exitCode"] = s.exitCode;
  out["levels"] = s.levels;
  if (!s.error.empty()) out["error"] = s.error;

  Json checks = Json::array();
  int failed = 0;
  for (const auto& c : s.checks) {
    if (!c.passed) ++failed;
    checks.push_back({{"surface", c.surface},
                      {"check", c.check},
                      {"value", number_or_null(c.value)},
                      {"comparator", c.comparator},
                      {"threshold", c.threshold},
                      {"passed", c.passed}});
  }
  out["checkCount"] = s.checks.size();
  out["failedCount"] = failed;
  out["checks"] = checks;

  Json orders = Json::object();
  for (const auto& row : s.rows) {
    Json& o = orders[row.surface][row.residual];
    o["order"] = number_or_null(row.order.order);
    o["floored"] = row.order.floored;
    o["values"].push_back(row.value);
  }
  out["orders"] = orders;

  Json energies = Json::object();
  for (const auto& [name, e] : s.energies) energies[name] = to_json(e);
  out["energies"] = energies;

  Json periodic = Json::array();
  for (const auto& p : s.periodic) {
    periodic.push_back({{"surface", p.surface},
                        {"level", p.level},
                        {"energy", to_json(p.energy)},
                        {"normalFlux", p.normalFlux},
                        {"area", p.area}});
  }
  out["periodic"] = periodic;
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ShapeMismatch(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace spinorsurf
