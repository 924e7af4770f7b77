#include "spinorsurf/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

using cd = std::complex<double>;

Grid Grid::open(int nu, int nv, double umin, double umax, double vmin, double vmax) {
  return make(nu, nv, umin, umax, vmin, vmax, false, false);
}

Grid Grid::make(int nu, int nv, double umin, double umax, double vmin, double vmax,
                bool periodicU, bool periodicV) {
  Grid g;
  g.nu = nu;
  g.nv = nv;
  g.u0 = umin;
  g.v0 = vmin;
  g.periodicU = periodicU;
  g.periodicV = periodicV;
  g.hu = (umax - umin) / (periodicU ? nu : nu - 1);
  g.hv = (vmax - vmin) / (periodicV ? nv : nv - 1);
  g.validate();
  return g;
}

void Grid::validate() const {
  if (nu < 8 || nv < 8) {
    throw InvalidGrid("need at least 8 nodes per axis, got " + std::to_string(nu) + "x" +
                      std::to_string(nv));
  }
  if (!(hu > 0.0) || !(hv > 0.0) || !std::isfinite(hu) || !std::isfinite(hv)) {
    throw InvalidGrid("spacings must be positive and finite");
  }
  if (boundaryBand < 0 || 2 * boundaryBand >= std::min(nu, nv)) {
    throw InvalidGrid("boundary band too wide for the grid");
  }
}

bool Grid::interior(int i, int j) const {
  if (!periodicU && (i < boundaryBand || i >= nu - boundaryBand)) return false;
  if (!periodicV && (j < boundaryBand || j >= nv - boundaryBand)) return false;
  return true;
}

void check_shape(const Grid& g, Eigen::Index n, const char* what) {
  if (n != g.size()) {
    throw ShapeMismatch(std::string(what) + " has " + std::to_string(n) + " samples, grid has " +
                        std::to_string(g.size()));
  }
}

namespace {

// Circulant spectral differentiation matrix for n samples over one period.
Eigen::MatrixXd spectral_matrix(int n, double period) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double scale = 2.0 * std::numbers::pi / period;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const int m = j - k;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double x = m * std::numbers::pi / n;
      d(j, k) = scale * 0.5 * sign * ((n % 2 == 0) ? 1.0 / std::tan(x) : 1.0 / std::sin(x));
    }
  }
  return d;
}

// Differentiates every line of `n` samples at `stride`, lines starting at
// `starts`, with spacing h.
void diff_lines(const ComplexField& f, ComplexField& out, int n, Eigen::Index stride,
                const std::vector<Eigen::Index>& starts, double h, bool periodic) {
  if (periodic) {
    const Eigen::MatrixXd d = spectral_matrix(n, n * h);
    Eigen::VectorXcd line(n);
    for (Eigen::Index s : starts) {
      for (int k = 0; k < n; ++k) line[k] = f[s + k * stride];
      const Eigen::VectorXcd r = d * line;
      for (int k = 0; k < n; ++k) out[s + k * stride] = r[k];
    }
    return;
  }
  const double c = 1.0 / (12.0 * h);
  for (Eigen::Index s : starts) {
    auto at = [&](int k) { return f[s + k * stride]; };
    for (int k = 2; k < n - 2; ++k) {
      out[s + k * stride] = c * (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2));
    }
    out[s] = c * (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4));
    out[s + stride] = c * (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4));
    const int e = n - 1;
    out[s + e * stride] =
        -c * (-25.0 * at(e) + 48.0 * at(e - 1) - 36.0 * at(e - 2) + 16.0 * at(e - 3) - 3.0 * at(e - 4));
    out[s + (e - 1) * stride] =
        -c * (-3.0 * at(e) - 10.0 * at(e - 1) + 18.0 * at(e - 2) - 6.0 * at(e - 3) + at(e - 4));
  }
}

}  // namespace

ComplexField d_u(const ComplexField& f, const Grid& g) {
  check_shape(g, f.size());
  ComplexField out(f.size());
  std::vector<Eigen::Index> starts(g.nv);
  for (int j = 0; j < g.nv; ++j) starts[j] = g.index(0, j);
  diff_lines(f, out, g.nu, 1, starts, g.hu, g.periodicU);
  return out;
}

ComplexField d_v(const ComplexField& f, const Grid& g) {
  check_shape(g, f.size());
  ComplexField out(f.size());
  std::vector<Eigen::Index> starts(g.nu);
  for (int i = 0; i < g.nu; ++i) starts[i] = i;
  diff_lines(f, out, g.nv, g.nu, starts, g.hv, g.periodicV);
  return out;
}

ComplexField d_z(const ComplexField& f, const Grid& g) {
  return 0.5 * (d_u(f, g) - cd(0, 1) * d_v(f, g));
}

ComplexField d_zbar(const ComplexField& f, const Grid& g) {
  return 0.5 * (d_u(f, g) + cd(0, 1) * d_v(f, g));
}

cd pairwise_sum(const cd* x, std::size_t n) {
  if (n <= 8) {
    cd s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += x[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

cd integrate_2form(const ComplexField& f, const Grid& g, const Mask* mask) {
  check_shape(g, f.size());
  if (mask) check_shape(g, mask->size(), "mask");
  std::vector<cd> terms(static_cast<std::size_t>(f.size()));
  for (int j = 0; j < g.nv; ++j) {
    const double wv = (!g.periodicV && (j == 0 || j == g.nv - 1)) ? 0.5 : 1.0;
    for (int i = 0; i < g.nu; ++i) {
      const double wu = (!g.periodicU && (i == 0 || i == g.nu - 1)) ? 0.5 : 1.0;
      const Eigen::Index k = g.index(i, j);
      terms[k] = (mask && !(*mask)[k]) ? cd(0.0) : f[k] * (wu * wv);
    }
  }
  return pairwise_sum(terms.data(), terms.size()) * (g.hu * g.hv);
}

namespace {

template <class F>
double sup_norm_impl(const F& f, const Grid& g, const Mask* mask) {
  check_shape(g, f.size());
  if (mask) check_shape(g, mask->size(), "mask");
  double m = 0.0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      if (!g.interior(i, j)) continue;
      const Eigen::Index k = g.index(i, j);
      if (mask && !(*mask)[k]) continue;
      const double a = std::abs(f[k]);
      if (std::isnan(a)) return a;
      m = std::max(m, a);
    }
  return m;
}

}  // namespace

double interior_sup_norm(const ComplexField& f, const Grid& g, const Mask* mask) {
  return sup_norm_impl(f, g, mask);
}

double interior_sup_norm(const RealField& f, const Grid& g, const Mask* mask) {
  return sup_norm_impl(f, g, mask);
}

ConvergenceResult convergence_order(const std::vector<std::pair<double, double>>& levels,
                                    double floor) {
  if (levels.size() < 3) {
    throw InsufficientLevels("need at least 3 refinement levels, got " +
                             std::to_string(levels.size()));
  }
  std::vector<std::pair<double, double>> kept;
  for (const auto& [h, r] : levels) {
    if (!(h > 0.0)) throw InvalidGrid("non-positive spacing in convergence data");
    if (r > floor) kept.emplace_back(h, r);
  }
  ConvergenceResult out;
  out.levelsUsed = static_cast<int>(kept.size());
  if (kept.size() < 2) {
    out.floored = true;
    out.order = std::numeric_limits<double>::infinity();
    return out;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(kept.size());
  for (const auto& [h, r] : kept) {
    const double x = std::log(h), y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace spinorsurf
