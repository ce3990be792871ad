#pragma once

#include <string>

#include <json.hpp>

#include "qconc/states.hpp"

namespace qconc {

// State files: {kind, L, N, basis, amplitudes: [{index: [..], re, im}]}
// with basis one of "product-tensor", "occupation", "slater". Density files:
// {kind, L, N, matrix: [[[re, im], ..], ..]}. Indices are 1-based in files.

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& value);

bool looks_like_density_file(const nlohmann::json& value);

PureState pure_state_from_json(const nlohmann::json& value);
MixedState mixed_state_from_json(const nlohmann::json& value);

PureState read_pure_state(const std::string& path);
MixedState read_mixed_state(const std::string& path);

/// Serializes in the kind's native basis: product-tensor entries for
/// distinguishable particles, occupation coefficients for bosons, Slater
/// coefficients for fermions.
nlohmann::json pure_state_to_json(const PureState& psi);
nlohmann::json mixed_state_to_json(const MixedState& rho);

}  // namespace qconc
