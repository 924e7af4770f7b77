#include "spinorsurf/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spinorsurf/errors.hpp"
#include "spinorsurf/reconstruct.hpp"

namespace spinorsurf {

using cd = std::complex<double>;

namespace {

SpinorField random_spinor(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SpinorField s;
  s.psi1.resize(g.size());
  s.psi2.resize(g.size());
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    s.psi1[k] = cd(dist(rng), dist(rng));
    s.psi2[k] = cd(dist(rng), dist(rng));
  }
  return s;
}

double interior_mean(const RealField& f, const Grid& g) {
  double sum = 0.0;
  int n = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i)
      if (g.interior(i, j)) {
        sum += f[g.index(i, j)];
        ++n;
      }
  return n ? sum / n : 0.0;
}

Eigen::Index centre_node(const Grid& g) { return g.index(g.nu / 2, g.nv / 2); }

void run(const CatalogEntry& entry, const AnalyzeOptions& opt, GeometryReport& rep) {
  const GroupKind kind = entry.kind;
  const bool periodic = opt.periodic;
  if (periodic && !entry.periodicDomain) {
    throw InvalidGrid(entry.name + " has no periodic chart");
  }
  const Domain dom = periodic ? *entry.periodicDomain : opt.domain.value_or(entry.domain);
  Grid g = Grid::make(opt.nu, opt.nv, dom.umin, dom.umax, dom.vmin, dom.vmax, periodic, periodic);
  g.boundaryBand = std::max(
      opt.boundaryBand,
      static_cast<int>(std::ceil(opt.interiorMargin * (std::min(g.nu, g.nv) - 1) - 1e-9)));
  g.validate();
  rep.grid = g;
  auto& norms = rep.residualNorms;

  // Z and its conformality
  std::optional<ImmersionField> immersion;
  MaurerCartanOptions mc;
  if (periodic || opt.closedFormZ) {
    rep.z = closed_form_z(entry, g, mc);
  } else {
    immersion = catalog_surface(entry, g);
    rep.z = maurer_cartan(*immersion, g, mc);
  }
  if (opt.faults.negateZ3) {
    rep.z.z[2] = -rep.z.z[2];
    finalize_zfield(rep.z, g, mc);
  }
  const ZField& z = rep.z;
  norms["conformality"] = interior_sup_norm(z.isotropy, g);
  const RealField alpha = 0.5 * z.conformFactor.log();
  rep.area = integrate_2form(z.conformFactor.cast<cd>(), g).real();

  const MeanCurvature mh = mean_curvature(z, kind, g);
  rep.meanH = mh.H;
  norms["meanHImag"] = mh.imagResidual;
  rep.meanHmean = interior_mean(mh.H, g);
  rep.meanHvar = interior_mean(RealField((mh.H - rep.meanHmean).square()), g);
  if (entry.expectedMinimal) norms["minimalH"] = interior_sup_norm(mh.H, g);

  rep.spinor = opt.faults.randomPsi ? random_spinor(g, opt.faults.seed) : spinor_from_Z(z, g);
  const SpinorField& s = rep.spinor;
  const RealField ea = s.psi1.abs2() + s.psi2.abs2();
  norms["spinorNorm"] = ((ea - z.conformFactor.sqrt()).abs() / z.conformFactor.sqrt()).maxCoeff();

  // normal: spinor form against the tangent cross product. Unit length is exact
  // algebra; agreement and orthogonality carry the discretization error of ψ.
  rep.normal = normal_from_Z(z);
  {
    const Vec3Field ns = normal_frame(s);
    double unit = 0.0, agree = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      const Eigen::Vector3d a(ns[0][k], ns[1][k], ns[2][k]);
      const Eigen::Vector3d b(rep.normal[0][k], rep.normal[1][k], rep.normal[2][k]);
      cd dotPsi = 0.0;
      for (int c = 0; c < 3; ++c) dotPsi += a[c] * z.z[c][k];
      unit = std::max({unit, std::abs(a.norm() - 1.0), std::abs(b.norm() - 1.0)});
      agree = std::max({agree, (a - b).norm(), std::abs(dotPsi) / std::sqrt(z.conformFactor[k])});
    }
    norms["normalUnit"] = unit;
    norms["normal"] = agree;
  }

  rep.potentials = potentials(s, mh.H, kind, opt.epsDeg);
  const DiracResidual dr = dirac_residual(s, rep.potentials, g);
  norms["dirac"] = dr.norm;
  norms["identity"] = identity_residual(s, rep.potentials, g);
  const MinimalResidual mr = minimal_equation_residual(s, g, kind);
  norms["minimal"] = mr.specialization;
  norms["minimalAlternate"] = mr.alternate;

  rep.hopfA = hopf_differential(s, kind, g, opt.faults.flipHopfSign ? -1.0 : 1.0);
  const CodazziResult cz = codazzi_residuals(alpha, rep.hopfA, mh.H, z.z[2], s, kind, g);
  norms["codazzi1"] = cz.r1;
  norms["codazzi2"] = cz.r2;
  rep.codazziLhs1 = cz.lhs1[centre_node(g)];
  rep.codazziRhs1 = cz.rhs1[centre_node(g)];
  norms["weingarten"] = weingarten_residual(s, alpha, rep.hopfA, kind, g);
  const std::vector<double> der = derivational_residuals(z, mh.H, kind, g);
  for (std::size_t k = 0; k < der.size(); ++k) {
    norms["derivational" + std::to_string(k + 1)] = der[k];
  }

  rep.energy = energy(rep.potentials, g);
  rep.normalFlux =
      integrate_2form((s.psi2.abs2().square() - s.psi1.abs2().square()).cast<cd>(), g).real();
  rep.Khat = tangent_plane_curvature_field(rep.normal, kind);

  if (kind != GroupKind::Sol) {
    const AbreschResult ab = abresch_differential(rep.hopfA, z.z[2], mh.H, z.conformFactor, kind, g);
    rep.abreschA = ab.At;
    norms["abresch"] = ab.defect;
    norms["abreschHolomorphy"] = ab.dbarSup;
    rep.cmc = cmc_check(mh.H, ab.dbarSup, g, opt.cmcTol);
    // both integrands from the same spinor: e^{2α} = (|ψ₁|² + |ψ₂|²)², N from ψ
    const RealField khatPsi = tangent_plane_curvature_field(normal_frame(s), kind);
    const GeometricEnergy ge = energy_geometric(mh.H, khatPsi, ea.square(), s, kind, g);
    rep.energyGeo = ge.value;
    norms["energyEquivalence"] = ge.maxRelDiff;
  }

  if (opt.reconstruct) {
    const GroupElement origin = immersion ? immersion->elements[0] : entry.paramMap(g.u(0), g.v(0));
    const ReconstructionResult rr = integrate_frame(z, kind, g, origin);
    norms["holonomy"] = rr.holonomyNorm;
    if (immersion) norms["roundTrip"] = round_trip_error(*immersion, rr.immersion, 0);
  }

  if (opt.oracleNodes > 0 && !periodic) {
    std::mt19937_64 rng(opt.oracleSeed);
    const int band = std::max(g.boundaryBand, 2);
    std::uniform_int_distribution<int> di(band, g.nu - 1 - band), dj(band, g.nv - 1 - band);
    double hopfErr = 0.0, hErr = 0.0;
    for (int n = 0; n < opt.oracleNodes; ++n) {
      const int i = di(rng), j = dj(rng);
      const Eigen::Index k = g.index(i, j);
      hopfErr = std::max(hopfErr, std::abs(rep.hopfA[k] - hopf_oracle(entry, g.u(i), g.v(j))));
      hErr = std::max(hErr, std::abs(mh.H[k] - mean_curvature_oracle(entry, g.u(i), g.v(j))));
    }
    norms["hopfOracle"] = hopfErr;
    norms["meanCurvatureOracle"] = hErr;
  }
}

}  // namespace

GeometryReport analyze(const CatalogEntry& entry, const AnalyzeOptions& opt) {
  GeometryReport rep;
  rep.surface = entry.name;
  rep.kind = entry.kind;
  try {
    run(entry, opt, rep);
  } catch (const Error& e) {
    rep.partial = true;
    rep.error = e.what();
  }
  return rep;
}

}  // namespace spinorsurf
