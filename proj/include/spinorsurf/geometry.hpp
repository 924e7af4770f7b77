#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "spinorsurf/grid.hpp"
#include "spinorsurf/lie_group.hpp"
#include "spinorsurf/spinor.hpp"

namespace spinorsurf {

using Vec3Field = std::array<RealField, 3>;
using CVec3Field = std::array<ComplexField, 3>;

/// ∇_a b for left-invariant fields sampled per node.
CVec3Field nabla_fields(const ConnectionTable& conn, const CVec3Field& a, const CVec3Field& b);

/// f⁻¹N from the spinor. Throws DegenerateImmersion if e^α vanishes somewhere.
Vec3Field normal_frame(const SpinorField& s);

/// f⁻¹N = 2i e^{−2α} (Z̄ × Z), the unit normal of the oriented frame (X, Y).
Vec3Field normal_from_Z(const ZField& zf);

struct MeanCurvature {
  RealField H;
  double imagResidual = 0.0;  // interior sup of the discarded imaginary part
};

/// H = e^{−2α} ⟨∂Ψ* + ∂̄Ψ + ∇_Ψ Ψ* + ∇_{Ψ*} Ψ, f⁻¹N⟩, normal taken from Z.
MeanCurvature mean_curvature(const ZField& zf, GroupKind kind, const Grid& g);

/// Group term of the Hopf differential in spinor form.
ComplexField hopf_group_term(const SpinorField& s, GroupKind kind);

/// A = ψ̄₂∂ψ₁ − ψ₁∂ψ̄₂ + group term.
ComplexField hopf_differential(const SpinorField& s, GroupKind kind, const Grid& g,
                               double groupTermSign = 1.0);

/// Nil: 1/(2H+i); SL2: 5/(2(H−i)). Throws GroupUnsupported for Sol.
ComplexField abresch_coefficient(const RealField& H, GroupKind kind);

struct AbreschResult {
  ComplexField At;         // Ã = A + c Z₃²
  double defect = 0.0;     // full Codazzi form ∂̄Ã − ½H_z e^{2α} − (∂̄c) Z₃²
  double dbarSup = 0.0;    // sup |∂̄Ã|
};

AbreschResult abresch_differential(const ComplexField& A, const ComplexField& z3,
                                   const RealField& H, const RealField& conformFactor,
                                   GroupKind kind, const Grid& g);

struct CodazziResult {
  double r1 = 0.0, r2 = 0.0;
  ComplexField lhs1, rhs1;  // pointwise first equation
};

/// `alpha` is ½ log e^{2α} from the Z field.
CodazziResult codazzi_residuals(const RealField& alpha, const ComplexField& A, const RealField& H,
                                const ComplexField& z3, const SpinorField& s, GroupKind kind,
                                const Grid& g);

double weingarten_residual(const SpinorField& s, const RealField& alpha, const ComplexField& A,
                           GroupKind kind, const Grid& g, bool dropGroupTerm = false);

/// The six componentwise derivational equations; Nil appends the identity
/// ∂Z̄₃ − ∂̄Z₃ = −(i/2)(|ψ₂|⁴ − |ψ₁|⁴) as a seventh entry, with |ψ_k|⁴ read off Z.
std::vector<double> derivational_residuals(const ZField& zf, const RealField& H, GroupKind kind,
                                           const Grid& g);

/// ∫ UV du dv over non-degenerate nodes.
std::complex<double> energy(const PotentialField& p, const Grid& g);

/// K̂ per node: sectional curvature of the plane orthogonal to the normal.
RealField tangent_plane_curvature_field(const Vec3Field& n, GroupKind kind);

/// Real spinor-form energy density (per du dv) of Nil or SL2.
RealField energy_density_spinor(const SpinorField& s, const RealField& H, GroupKind kind);

/// ¼(H² + K̂/4 − 1/16)e^{2α} for Nil, ¼(H² + 5K̂/16 − ¼)e^{2α} for SL2.
RealField energy_density_geometric(const RealField& H, const RealField& Khat,
                                   const RealField& conformFactor, GroupKind kind);

struct GeometricEnergy {
  double value = 0.0;
  double maxRelDiff = 0.0;  // sup |geometric − spinor| / max(e^{2α}) over all nodes
};

/// Throws GroupUnsupported for Sol.
GeometricEnergy energy_geometric(const RealField& H, const RealField& Khat,
                                 const RealField& conformFactor, const SpinorField& s,
                                 GroupKind kind, const Grid& g);

struct CmcReport {
  double abreschSup = 0.0;   // sup |∂̄Ã|
  double hVariation = 0.0;   // sup |H − mean H|
  bool holomorphic = false;
  bool constantH = false;
  bool consistent = true;    // holomorphic Ã exactly when H is constant
};

CmcReport cmc_check(const RealField& H, double abreschSup, const Grid& g, double tol = 1e-4);

}  // namespace spinorsurf
