#pragma once

#include <complex>

#include <Eigen/Core>

#include "spinorsurf/lie_group.hpp"

namespace spinorsurf {

using cdouble = std::complex<double>;

/// Matrix realization of a group element. Nil and Sol use the full 3x3 real
/// matrix; SL2 lives in the upper-left 2x2 complex block with entry (2,2) = 1,
/// which embeds the SL(2) chart as a subgroup of GL(3, C).
using ChartMatrix = Eigen::Matrix3cd;

struct GroupElement {
  GroupKind kind = GroupKind::Nil;
  ChartMatrix m = ChartMatrix::Identity();
  /// SL2 only: fiber angle of the universal-cover lift. Bookkeeping for
  /// reports; never enters a residual.
  double windingAngle = 0.0;
};

/// Chart matrix of the orthonormal basis vector e_k (k = 0, 1, 2).
ChartMatrix generator(GroupKind kind, int k);

/// sum_k v_k e_k as a chart matrix (complex coefficients allowed).
ChartMatrix algebra_matrix(GroupKind kind, const Eigen::Vector3cd& v);

/// Coordinates of an algebra matrix in the orthonormal basis. The map is
/// complex-linear, so it also projects complexified elements such as f^{-1} ∂f.
Eigen::Vector3cd algebra_coords(GroupKind kind, const ChartMatrix& x);

GroupElement identity_element(GroupKind kind);
GroupElement nil_element(double x, double y, double z);
GroupElement sol_element(double x, double y, double z);
/// SL2 element from its 2x2 chart block; renormalized to unit determinant.
GroupElement sl2_element(const Eigen::Matrix2cd& block);

GroupElement group_exp(GroupKind kind, const Eigen::Vector3d& v);
GroupElement group_mul(const GroupElement& a, const GroupElement& b);
/// Throws SingularElement if the chart matrix cannot be inverted.
GroupElement group_inv(const GroupElement& a);

/// Projects a numerically drifted chart matrix back onto the group:
/// unit upper-triangular (Nil), reciprocal diagonal (Sol), det = 1 (SL2).
void renormalize(GroupElement& g);

/// Frobenius distance of chart matrices.
double chart_distance(const GroupElement& a, const GroupElement& b);

/// Largest deviation from the chart invariants (0 for an exact element).
double chart_invariant_defect(const GroupElement& g);

}  // namespace spinorsurf
