#pragma once

#include <string>

#include <json.hpp>

#include "spinorsurf/analyze.hpp"
#include "spinorsurf/reconstruct.hpp"
#include "spinorsurf/verify.hpp"

namespace spinorsurf {

using Json = nlohmann::json;

// Complex numbers are written as [re, im]; fields as {nu, nv, data} with
// u-index fastest, matching Grid::index.

Json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const Json& j);
Json to_json(const Rational& q);  // {num, den}

Json to_json(const Grid& g);
Grid grid_from_json(const Json& j);

Json field_json(const ComplexField& f, const Grid& g);
Json field_json(const RealField& f, const Grid& g);
ComplexField complex_field_from_json(const Json& j, const Grid& g);
RealField real_field_from_json(const Json& j, const Grid& g);

/// Structure constants, connection, curvature and sectional curvatures.
Json group_json(GroupKind kind);

Json report_json(const GeometryReport& r, bool dumpFields);

/// Input for reconstruction: {group, grid, psi1, psi2, H}.
Json spinor_json(const GeometryReport& r);
struct SpinorInput {
  GroupKind kind = GroupKind::Nil;
  Grid grid;
  SpinorField spinor;
  RealField H;
};
/// Throws ShapeMismatch / InvalidGrid on malformed documents.
SpinorInput spinor_from_json(const Json& j);

Json immersion_json(const ReconstructionResult& r, const Grid& g);

Json summary_json(const VerifySummary& s);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace spinorsurf
