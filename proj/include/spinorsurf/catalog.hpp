#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinorsurf/grid.hpp"
#include "spinorsurf/group_chart.hpp"
#include "spinorsurf/spinor.hpp"

namespace spinorsurf {

struct Domain {
  double umin = -1.0, umax = 1.0, vmin = -1.0, vmax = 1.0;
};

/// Closed tangent data (X, Y) = (f⁻¹f_u, f⁻¹f_v) in algebra coordinates.
using TangentPair = std::pair<Eigen::Vector3d, Eigen::Vector3d>;

struct CatalogEntry {
  std::string name;
  GroupKind kind = GroupKind::Nil;
  std::function<GroupElement(double, double)> paramMap;
  std::function<TangentPair(double, double)> tangents;
  std::function<double(double, double)> conformalFactor;  // e^{2α}; may be empty
  bool expectedMinimal = false;
  bool quadrature = false;  // chart built from a numerical reparametrization
  std::string notes;
  Domain domain;
  /// Chart on which Z (and the spinor) is periodic in both directions.
  std::optional<Domain> periodicDomain;
};

struct CatalogParams {
  double radius = 1.0;  // nil-cylinder
};

const std::vector<std::string>& catalog_names();

/// Throws UnknownSurface.
CatalogEntry catalog_entry(const std::string& name, const CatalogParams& params = {});

Grid entry_grid(const CatalogEntry& e, int nu, int nv);

/// Samples paramMap on the grid. Throws DomainViolation outside the chart.
ImmersionField catalog_surface(const CatalogEntry& e, const Grid& g);

/// Z sampled from the closed tangents.
ZField closed_form_z(const CatalogEntry& e, const Grid& g, const MaurerCartanOptions& opt = {});

/// Independent pointwise oracles that finite-difference paramMap directly.
/// Tangents (X, Y) at (u, v) with step h.
TangentPair tangent_oracle(const CatalogEntry& e, double u, double v, double h = 1e-3);

/// H = (II(f_u, f_u) + II(f_v, f_v)) / (|f_u|² + |f_v|²).
double mean_curvature_oracle(const CatalogEntry& e, double u, double v, double h = 1e-3);

/// A = ⟨∇_{f_z} f_z, N⟩.
std::complex<double> hopf_oracle(const CatalogEntry& e, double u, double v, double h = 1e-3);

/// w(v) = ∫₀ᵛ ds / sqrt(cosh 2s) and its inverse as used by the sol-exp-diag chart.
double sol_diag_w(double v);
/// Returns (v, dv/dw) at w. Throws DomainViolation for |w| beyond the table.
std::pair<double, double> sol_diag_v(double w);

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace spinorsurf
