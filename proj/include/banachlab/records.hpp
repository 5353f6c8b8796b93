#pragma once

// JSON plumbing shared by the runner and the CLI: config field access
// with path-carrying errors, value serialization, and reconstruction of
// oracles / Haar systems / function specs from a config echo.

#include <json.hpp>

#include <string>
#include <vector>

#include "banachlab/experiments.hpp"
#include "banachlab/haar.hpp"
#include "banachlab/l1lab.hpp"
#include "banachlab/norms.hpp"

namespace banachlab {

using Json = nlohmann::json;

Json norm_value_to_json(const NormValue& v);
NormValue norm_value_from_json(const Json& j, const std::string& path);

const Json& require_field(const Json& obj, const std::string& key, const std::string& path);
std::string require_string(const Json& obj, const std::string& key, const std::string& path);
long require_int(const Json& obj, const std::string& key, const std::string& path);
long optional_int(const Json& obj, const std::string& key, long fallback,
                  const std::string& path);
std::string optional_string(const Json& obj, const std::string& key, const std::string& fallback,
                            const std::string& path);

OraclePtr oracle_from_config(const Json& config, const std::string& path);
/// "canonical", "locations", or {"residues": [[0], [r,r], ...]}.
HaarPtr haar_from_config(const Json& config, const std::string& path);
FunctionSpec function_from_config(const Json& config, const OraclePtr& oracle,
                                  const std::string& path);

/// Splits a text blob into step functions ("level g" starts each one).
std::vector<StepFunction> parse_step_functions(const std::string& text);
std::vector<StepFunction> step_functions_from_config(const Json& config, const std::string& path);

/// "cell,owner" lines; unassigned cells have an empty owner column.
std::string assignment_to_csv(const CellAssignment& assignment);

}  // namespace banachlab
