#pragma once

#include <json.hpp>
#include <string>

#include "pueb/entangled.hpp"
#include "pueb/mub.hpp"
#include "pueb/tomography.hpp"

namespace pueb {

using Json = nlohmann::ordered_json;

/// Basis file: {format, dim, label, states: [[ [re, im], ... ], ...]},
/// plus phase_exps when every state carries them.
Json basis_to_json(const MubBasis& basis);

/// Entangled-basis file: the basis format plus {b, s} and the tensor
/// convention string.
Json ent_basis_to_json(const EntangledBasis& basis);

/// {format, dim, scheme, settings: [{id, outcomes: [p, ...]}, ...]}
Json prob_table_to_json(const ProbTable& table);
ProbTable prob_table_from_json(const Json& j);

/// {format, dim, entries: [[re, im], ...]} row-major.
Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace pueb
