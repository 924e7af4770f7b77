#pragma once

#include "spinorsurf/grid.hpp"
#include "spinorsurf/group_chart.hpp"
#include "spinorsurf/spinor.hpp"

namespace spinorsurf {

enum class PathOrder { RowMajor, ColumnMajor };

struct ReconstructionResult {
  ImmersionField immersion;
  double holonomyNorm = 0.0;  // max plaquette defect
  PathOrder pathOrder = PathOrder::RowMajor;
};

/// Integrates f_u = f·X, f_v = f·Y (X = Ψ + Ψ*, Y = i(Ψ − Ψ*)) with RK4 and
/// cubic midpoint interpolation: down the first column in v, then along every
/// row in u. The node (0, 0) is mapped to `origin`. Throws ChartBlowup when a
/// chart entry leaves the representable range.
ReconstructionResult integrate_frame(const ZField& zf, GroupKind kind, const Grid& g,
                                     const GroupElement& origin);

/// Per plaquette (stored at its lower-left node; last row and column are 0):
/// distance between the two edge orderings around the cell, over the cell area.
RealField holonomy_residual(const ZField& zf, GroupKind kind, const Grid& g);

/// max_k ‖f0_k⁻¹ (g f1_k) − I‖ where g aligns f1 to f0 at `seed`.
double round_trip_error(const ImmersionField& f0, const ImmersionField& f1,
                        Eigen::Index seed = 0);

}  // namespace spinorsurf
