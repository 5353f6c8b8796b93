#include "banachlab/records.hpp"

#include <sstream>

namespace banachlab {

Json norm_value_to_json(const NormValue& v) {
  return Json{{"lower", rat_str(v.lower)}, {"upper", rat_str(v.upper)}, {"exact", v.exact}};
}

NormValue norm_value_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  NormValue v;
  v.lower = parse_rat(require_string(j, "lower", path));
  v.upper = parse_rat(require_string(j, "upper", path));
  const Json& e = require_field(j, "exact", path);
  if (!e.is_boolean()) throw ValidationError(path + ".exact: expected a boolean");
  v.exact = e.get<bool>();
  if (v.lower > v.upper || (v.exact && v.lower != v.upper)) {
    throw ValidationError(path + ": malformed enclosure");
  }
  return v;
}

const Json& require_field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(path + "." + key + ": missing field");
  }
  return obj.at(key);
}

std::string require_string(const Json& obj, const std::string& key, const std::string& path) {
  const Json& f = require_field(obj, key, path);
  if (!f.is_string()) throw ValidationError(path + "." + key + ": expected a string");
  return f.get<std::string>();
}

long require_int(const Json& obj, const std::string& key, const std::string& path) {
  const Json& f = require_field(obj, key, path);
  if (!f.is_number_integer()) throw ValidationError(path + "." + key + ": expected an integer");
  return f.get<long>();
}

long optional_int(const Json& obj, const std::string& key, long fallback,
                  const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return require_int(obj, key, path);
}

std::string optional_string(const Json& obj, const std::string& key, const std::string& fallback,
                            const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return require_string(obj, key, path);
}

OraclePtr oracle_from_config(const Json& config, const std::string& path) {
  std::string id = require_string(config, "oracle", path);
  try {
    return make_oracle(id);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ".oracle: " + e.what());
  }
}

HaarPtr haar_from_config(const Json& config, const std::string& path) {
  const Json& f = require_field(config, "haar_system", path);
  if (f.is_string()) {
    try {
      return make_haar(f.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(path + ".haar_system: " + e.what());
    }
  }
  if (f.is_object() && f.contains("residues")) {
    const Json& table = f.at("residues");
    if (!table.is_array()) {
      throw ValidationError(path + ".haar_system.residues: expected an array");
    }
    std::vector<std::vector<Index>> residues;
    for (const Json& level : table) {
      if (!level.is_array()) {
        throw ValidationError(path + ".haar_system.residues: expected arrays of integers");
      }
      std::vector<Index> row;
      for (const Json& r : level) {
        if (!r.is_number_integer()) {
          throw ValidationError(path + ".haar_system.residues: expected integers");
        }
        row.push_back(r.get<Index>());
      }
      residues.push_back(std::move(row));
    }
    try {
      return residue_haar(residues);
    } catch (const ValidationError& e) {
      throw ValidationError(path + ".haar_system.residues: " + e.what());
    }
  }
  throw ValidationError(path + ".haar_system: expected a name or {\"residues\": ...}");
}

FunctionSpec function_from_config(const Json& config, const OraclePtr& oracle,
                                  const std::string& path) {
  std::string name = require_string(config, "function", path);
  if (name == "standard") return standard_function(oracle);
  if (name == "haar") return haar_image_function(haar_from_config(config, path), oracle);
  throw ValidationError(path + ".function: unknown function spec '" + name + "'");
}

std::vector<StepFunction> parse_step_functions(const std::string& text) {
  std::vector<StepFunction> out;
  std::size_t pos = text.find("level");
  if (pos == std::string::npos && !text.empty()) {
    throw ValidationError("no step functions found (expected 'level g ...')");
  }
  while (pos != std::string::npos) {
    std::size_t next = text.find("level", pos + 1);
    std::string chunk = text.substr(pos, next == std::string::npos ? next : next - pos);
    out.push_back(StepFunction::parse(chunk));
    pos = next;
  }
  return out;
}

std::vector<StepFunction> step_functions_from_config(const Json& config,
                                                     const std::string& path) {
  const Json& f = require_field(config, "functions", path);
  if (!f.is_array() || f.empty()) {
    throw ValidationError(path + ".functions: expected a nonempty array of step functions");
  }
  std::vector<StepFunction> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_string()) {
      throw ValidationError(path + ".functions[" + std::to_string(i) + "]: expected a string");
    }
    try {
      out.push_back(StepFunction::parse(f[i].get<std::string>()));
    } catch (const ValidationError& e) {
      throw ValidationError(path + ".functions[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

std::string assignment_to_csv(const CellAssignment& assignment) {
  std::ostringstream out;
  out << "cell,owner\n";
  for (std::size_t c = 0; c < assignment.owner.size(); ++c) {
    out << (c + 1) << ",";
    if (assignment.owner[c] >= 0) out << (assignment.owner[c] + 1);
    out << "\n";
  }
  return out.str();
}

}  // namespace banachlab
