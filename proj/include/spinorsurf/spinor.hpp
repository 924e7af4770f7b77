#pragma once

#include <array>
#include <vector>

#include "spinorsurf/grid.hpp"
#include "spinorsurf/group_chart.hpp"
#include "spinorsurf/lie_group.hpp"

namespace spinorsurf {

struct ImmersionField {
  GroupKind kind = GroupKind::Nil;
  std::vector<GroupElement> elements;  // grid order
};

/// Ψ = f⁻¹∂f = Σ Z_k e_k on the grid.
struct ZField {
  std::array<ComplexField, 3> z;
  RealField conformFactor;  // e^{2α} = 2 Σ |Z_k|²
  RealField isotropy;       // |Σ Z_k²| / Σ |Z_k|², zero for a conformal chart

  const ComplexField& z1() const { return z[0]; }
  const ComplexField& z2() const { return z[1]; }
  const ComplexField& z3() const { return z[2]; }
};

struct SpinorField {
  ComplexField psi1, psi2;
  Eigen::Index signSeedNode = 0;
};

struct PotentialField {
  ComplexField U, V;
  Mask degenerateMask;  // true where the Sol potentials are undefined (set to 0)
};

struct MaurerCartanOptions {
  double degenerateTol = 1e-10;  // minimum e^{2α}
  double conformalTol = 1e-3;    // maximum interior isotropy
};

/// Fills conformFactor and isotropy from z; throws DegenerateImmersion or
/// NonConformal according to `opt`.
void finalize_zfield(ZField& zf, const Grid& g, const MaurerCartanOptions& opt = {});

/// Z from the real tangents X = f⁻¹f_u, Y = f⁻¹f_v given in algebra coordinates:
/// Z = (X − iY)/2.
ZField z_from_tangents(const std::array<RealField, 3>& x, const std::array<RealField, 3>& y,
                       const Grid& g, const MaurerCartanOptions& opt = {});

/// Differentiates the chart matrices on the grid and projects f⁻¹∂f onto e_k.
ZField maurer_cartan(const ImmersionField& f, const Grid& g, const MaurerCartanOptions& opt = {});

/// Square-root inversion ψ₁² = −iZ₁ − Z₂, ψ̄₂² = −iZ₁ + Z₂ with ψ₁ψ̄₂ = Z₃,
/// branch propagated by breadth-first continuity from the node of largest e^α.
/// Throws BranchInconsistency naming the first edge whose endpoints disagree.
SpinorField spinor_from_Z(const ZField& zf, const Grid& g);

ZField Z_from_spinor(const SpinorField& s);

/// Nodes where |ψ₁|² or |ψ₂|² falls below eps · max e^α.
Mask sol_degenerate_mask(const SpinorField& s, double eps = 1e-9);

PotentialField potentials(const SpinorField& s, const RealField& H, GroupKind kind,
                          double epsDeg = 1e-9);

/// Nodes used by potential-dependent norms: non-degenerate nodes, plus degenerate
/// nodes whose whole 4-neighbourhood is degenerate (U = V = 0 holds there).
Mask potential_norm_mask(const PotentialField& p, const Grid& g);

struct DiracResidual {
  ComplexField r1, r2;  // ∂ψ₂ + Uψ₁,  −∂̄ψ₁ + Vψ₂
  double norm = 0.0;    // interior sup of max(|r1|, |r2|)
};

DiracResidual dirac_residual(const SpinorField& s, const PotentialField& p, const Grid& g);

/// |∂̄(ψ₁ψ̄₂) − [(−ReU|ψ₁|² + ReV|ψ₂|²) + i(ImU|ψ₁|² + ImV|ψ₂|²)]|, interior sup.
double identity_residual(const SpinorField& s, const PotentialField& p, const Grid& g);

struct MinimalResidual {
  double specialization = 0.0;  // H = 0 reading of the Dirac system
  double alternate = 0.0;       // sign variant: Nil ∂̄ψ₁ pairs with ψ₁, Sol ∂ψ₂ = −½ψ̄₁ψ̄₂²
};

/// Residual of the H = 0 equations ∂̄ψ₁ = Vψ₂, ∂ψ₂ = −Uψ₁ (sum of both moduli).
MinimalResidual minimal_equation_residual(const SpinorField& s, const Grid& g, GroupKind kind);

}  // namespace spinorsurf
