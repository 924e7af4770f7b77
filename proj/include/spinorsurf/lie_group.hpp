#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/rational.hpp>

namespace spinorsurf {

using Rational = boost::rational<std::int64_t>;

enum class GroupKind { Nil, SL2, Sol };

std::string_view to_string(GroupKind kind);
/// Accepts "nil", "sl2" and "sol" (case-insensitive).
GroupKind parse_group(std::string_view name);

/// Dense rank-3 array over {0,1,2}^3, row-major in its three slots.
template <class T>
class Tensor3 {
 public:
  T& operator()(int a, int b, int c) { return data_[9 * a + 3 * b + c]; }
  const T& operator()(int a, int b, int c) const { return data_[9 * a + 3 * b + c]; }
  bool operator==(const Tensor3&) const = default;

 private:
  std::array<T, 27> data_{};
};

template <class T>
class Tensor4 {
 public:
  T& operator()(int a, int b, int c, int d) { return data_[27 * a + 9 * b + 3 * c + d]; }
  const T& operator()(int a, int b, int c, int d) const {
    return data_[27 * a + 9 * b + 3 * c + d];
  }
  bool operator==(const Tensor4&) const = default;

 private:
  std::array<T, 81> data_{};
};

/// Three-dimensional Lie group with its left-invariant metric, described in an
/// orthonormal basis e_1, e_2, e_3 of the Lie algebra.
///
/// `c(k, i, j)` holds c^k_{ij} with [e_i, e_j] = c^k_{ij} e_k (zero-based indices).
/// `basisScale` relates the raw matrix generators of the chart to the
/// orthonormal basis: e_j = basisScale * f_j (1/2 for SL2, 1 otherwise).
struct LieGroup3 {
  GroupKind kind = GroupKind::Nil;
  Tensor3<Rational> c;
  Rational basisScale{1};

  static LieGroup3 nil();
  static LieGroup3 sl2();
  static LieGroup3 sol();
  static LieGroup3 make(GroupKind kind);

  std::string_view name() const { return to_string(kind); }
};

/// Levi-Civita connection of a left-invariant metric: gamma(i, j, k) = Γ^i_{jk},
/// with ∇_{e_k} e_j = Γ^i_{jk} e_i.
struct ConnectionTable {
  Tensor3<Rational> gamma;

  /// Coefficients of ∇_{e_k} e_j in the basis.
  std::array<Rational, 3> covariant(int k, int j) const;

  /// ∇_a b for constant-coefficient (left-invariant) complex fields a, b.
  Eigen::Vector3cd nabla(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) const;
};

/// r(l, k, j, i) = R_{lkji} = <R(e_i, e_j) e_k, e_l>,
/// R(X, Y) = ∇_Y ∇_X - ∇_X ∇_Y + ∇_{[X,Y]}.
struct CurvatureTensor {
  Tensor4<Rational> r;

  /// <R(X, Y) Z, W> for real algebra vectors.
  double evaluate(const Eigen::Vector3d& x, const Eigen::Vector3d& y, const Eigen::Vector3d& z,
                  const Eigen::Vector3d& w) const;
};

/// j(n, i, j, k): e_n-component of the cyclic sum of [[e_i, e_j], e_k].
/// Identically zero iff the Jacobi identity holds.
Tensor4<Rational> jacobiator(const Tensor3<Rational>& c);

ConnectionTable connection_from_structure(const LieGroup3& group);
CurvatureTensor curvature_tensor(const LieGroup3& group, const ConnectionTable& conn);

/// Sectional curvature of span{X, Y}; throws DegeneratePlane when X ∥ Y.
double sectional_curvature(const CurvatureTensor& curv, const Eigen::Vector3d& x,
                           const Eigen::Vector3d& y);

/// Sectional curvature of the plane orthogonal to the unit vector n.
double tangent_plane_curvature(const CurvatureTensor& curv, const Eigen::Vector3d& n);

/// Comparing boost::rational against a plain integer recurses forever under
/// C++20 rewritten comparisons; compare numerators instead.
inline bool is_zero(const Rational& q) { return q.numerator() == 0; }

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace spinorsurf
