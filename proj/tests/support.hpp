#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>

#include "spinorsurf/grid.hpp"
#include "spinorsurf/lie_group.hpp"
#include "spinorsurf/spinor.hpp"

namespace testing {

using cd = std::complex<double>;
using spinorsurf::Rational;

inline bool same(const Rational& a, const Rational& b) {
  return a.numerator() == b.numerator() && a.denominator() == b.denominator();
}

inline std::string str(const Rational& q) {
  std::ostringstream os;
  os << q.numerator() << "/" << q.denominator();
  return os.str();
}

// Smooth, nowhere-vanishing spinor on g built from low-order trigonometric
// polynomials with seeded coefficients.
inline spinorsurf::SpinorField smooth_spinor(const spinorsurf::Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  const cd a0(1.0 + d(rng), d(rng)), a1(d(rng), d(rng)), a2(d(rng), d(rng));
  const cd b0(0.7 + d(rng), d(rng)), b1(d(rng), d(rng)), b2(d(rng), d(rng));
  spinorsurf::SpinorField s;
  s.psi1.resize(g.size());
  s.psi2.resize(g.size());
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double u = g.u(i), v = g.v(j);
      const auto k = g.index(i, j);
      s.psi1[k] = a0 + a1 * std::sin(u) + a2 * std::cos(v);
      s.psi2[k] = b0 + b1 * std::cos(u + v) + b2 * std::sin(2.0 * v);
    }
  return s;
}

inline Eigen::Vector3d random_unit(std::mt19937& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector3d x(n(rng), n(rng), n(rng));
  return x.normalized();
}

}  // namespace testing
