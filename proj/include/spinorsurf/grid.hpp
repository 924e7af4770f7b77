#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace spinorsurf {

/// Node values of a field, u-index fastest: index = j * nu + i.
using ComplexField = Eigen::ArrayXcd;
using RealField = Eigen::ArrayXd;
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Rectangular chart z = u + iv. Open axes include both endpoints; periodic
/// axes sample [start, start + period) with wrap-around.
struct Grid {
  int nu = 0, nv = 0;
  double u0 = 0.0, v0 = 0.0;
  double hu = 0.0, hv = 0.0;
  bool periodicU = false, periodicV = false;
  int boundaryBand = 2;

  static Grid open(int nu, int nv, double umin, double umax, double vmin, double vmax);
  /// periodic flags select wrap-around on each axis; extents are then periods.
  static Grid make(int nu, int nv, double umin, double umax, double vmin, double vmax,
                   bool periodicU, bool periodicV);

  /// Throws InvalidGrid.
  void validate() const;

  Eigen::Index size() const { return Eigen::Index(nu) * nv; }
  Eigen::Index index(int i, int j) const { return Eigen::Index(j) * nu + i; }
  double u(int i) const { return u0 + i * hu; }
  double v(int j) const { return v0 + j * hv; }
  bool interior(int i, int j) const;
};

/// Throws ShapeMismatch unless the field has one sample per node.
void check_shape(const Grid& g, Eigen::Index n, const char* what = "field");

ComplexField d_u(const ComplexField& f, const Grid& g);
ComplexField d_v(const ComplexField& f, const Grid& g);
/// ∂ = (∂_u − i∂_v)/2 and ∂̄ = (∂_u + i∂_v)/2.
ComplexField d_z(const ComplexField& f, const Grid& g);
ComplexField d_zbar(const ComplexField& f, const Grid& g);

/// ∫ f du dv with trapezoid weights on open edges; masked-out nodes (mask
/// false) are skipped. Summation is pairwise in node order.
std::complex<double> integrate_2form(const ComplexField& f, const Grid& g,
                                     const Mask* mask = nullptr);

/// max |f| over nodes at least boundaryBand away from every open edge and,
/// when given, with mask true. Returns 0 if no node qualifies.
double interior_sup_norm(const ComplexField& f, const Grid& g, const Mask* mask = nullptr);
double interior_sup_norm(const RealField& f, const Grid& g, const Mask* mask = nullptr);

/// Pairwise (cascade) sum; result independent of evaluation scheduling.
std::complex<double> pairwise_sum(const std::complex<double>* x, std::size_t n);

struct ConvergenceResult {
  double order = 0.0;
  int levelsUsed = 0;
  /// Fewer than two levels above the floor: the residual is at round-off.
  bool floored = false;
};

/// Least-squares slope of log(residual) against log(h). Levels whose residual
/// is at or below `floor` are dropped first. Throws InsufficientLevels for
/// fewer than three levels.
ConvergenceResult convergence_order(const std::vector<std::pair<double, double>>& levels,
                                    double floor = 1e-12);

}  // namespace spinorsurf
