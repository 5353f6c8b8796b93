#include "banachlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "banachlab/wiw.hpp"

namespace banachlab {

namespace {

NormValue safe_enclosure(const NormOracle& oracle, const FinVec& x) {
  try {
    return oracle.enclosure(x);
  } catch (const WidthBudgetError& e) {
    return e.best();  // budget exhaustion is a flagged result, not a failure
  }
}

NormValue scaled(const NormValue& v, const Rat& s) {
  return {v.lower * s, v.upper * s, v.exact};
}

Json tags_to_json(const TaggedPartition& tags) {
  Json out = Json::array();
  for (const auto& t : tags.tags) {
    if (t) {
      out.push_back(t->str());
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

TaggedPartition tags_from_json(int level, const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array of tags");
  TaggedPartition part{level, {}};
  for (const Json& t : j) {
    if (t.is_null()) {
      part.tags.push_back(std::nullopt);
    } else if (t.is_string()) {
      part.tags.push_back(DyadicRational::parse(t.get<std::string>()));
    } else {
      throw ValidationError(path + ": tags must be strings or null");
    }
  }
  return part;
}

std::vector<Rat> coeffs_from_string(const std::string& text, const std::string& path) {
  std::istringstream in(text);
  std::vector<Rat> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_rat(tok));
  if (out.empty()) throw ValidationError(path + ": no coefficients");
  return out;
}

WeightSchedule schedule_from_config(const Json& config, const std::string& path) {
  if (!config.contains("schedule")) return WeightSchedule::standard();
  const Json& s = config.at("schedule");
  auto read = [&](const char* key) {
    const Json& arr = require_field(s, key, path + ".schedule");
    if (!arr.is_array() || arr.empty()) {
      throw ValidationError(path + ".schedule." + key + ": expected a nonempty array");
    }
    std::vector<Int> out;
    for (const Json& v : arr) {
      if (!v.is_number_integer()) {
        throw ValidationError(path + ".schedule." + key + ": expected integers");
      }
      out.push_back(Int(v.get<long>()));
    }
    return out;
  };
  bool require_growth = s.is_object() && s.value("require_growth", false);
  try {
    return WeightSchedule::custom(read("a"), read("b"), require_growth);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ".schedule: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Command execution
// ---------------------------------------------------------------------------

Json run_norm(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  FinVec x = FinVec::parse(require_string(config, "vector", "config"));
  return Json{{"oracle", oracle->id()},
              {"vector", x.str()},
              {"value", norm_value_to_json(safe_enclosure(*oracle, x))}};
}

Json run_riemann(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  FunctionSpec f = function_from_config(config, oracle, "config");
  const Json& levels = require_field(config, "levels", "config");
  int from = static_cast<int>(require_int(levels, "from", "config.levels"));
  int to = static_cast<int>(require_int(levels, "to", "config.levels"));
  if (from < 1 || to < from || to > 20) throw ValidationError("config.levels: bad range");
  bool signed_sup = config.value("signed", false);
  RiemannBudget budget;
  if (config.contains("budgets")) {
    const Json& b = config.at("budgets");
    budget.tag_depth = static_cast<int>(optional_int(b, "tag_depth", budget.tag_depth,
                                                     "config.budgets"));
    budget.combo_cap = optional_int(b, "combo_cap", budget.combo_cap, "config.budgets");
    if (budget.tag_depth < 1 || budget.combo_cap < 1) {
      throw ValidationError("config.budgets: budgets must be positive");
    }
  }
  if (require_string(config, "function", "config") == "haar") {
    // Tags reach reduced level to + tag_depth, and sigma needs the
    // system to be defined there.
    int deepest = to + budget.tag_depth;
    if (deepest > haar_from_config(config, "config")->max_level()) {
      throw ValidationError("config.levels: tags reach level " + std::to_string(deepest) +
                            " but the Haar system stops earlier");
    }
  }
  Json profile = Json::array();
  for (int m = from; m <= to; ++m) {
    RiemannReport rep = signed_sup ? riemann_signed_sup(f, m, *oracle, budget)
                                   : riemann_sup(f, m, *oracle, budget);
    Json entry{{"level", rep.level},
               {"value", norm_value_to_json(rep.value)},
               {"tags", tags_to_json(rep.tags)},
               {"exhaustive", rep.exhaustive}};
    if (!rep.signs.empty()) entry["signs"] = rep.signs;
    profile.push_back(entry);
  }
  Json results{{"oracle", oracle->id()},
               {"function", f.id},
               {"signed", signed_sup},
               {"profile", profile}};
  return results;
}

Json run_haar_witness(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  HaarPtr sys = haar_from_config(config, "config");
  const Json& levels = require_field(config, "levels", "config");
  int from = static_cast<int>(require_int(levels, "from", "config.levels"));
  int to = static_cast<int>(require_int(levels, "to", "config.levels"));
  if (from < 0 || to < from || to > 16) throw ValidationError("config.levels: bad range");
  HaarWitnessBudget budget;
  if (config.contains("budgets")) {
    const Json& b = config.at("budgets");
    budget.m_cap = static_cast<int>(optional_int(b, "m_cap", 0, "config.budgets"));
    budget.choice_budget = optional_int(b, "choice_budget", budget.choice_budget,
                                        "config.budgets");
    if (budget.choice_budget < 0) throw ValidationError("config.budgets: bad choice_budget");
  }
  if (std::max(to, budget.m_cap) > sys->max_level()) {
    throw ValidationError("config.levels: the Haar system only defines levels up to " +
                          std::to_string(sys->max_level()));
  }
  Json profile = Json::array();
  for (int n = from; n <= to; ++n) {
    HaarWitnessBudget level_budget = budget;
    if (level_budget.m_cap != 0 && level_budget.m_cap < n) level_budget.m_cap = n;
    HaarWitnessReport rep = haar_l1_witness(*oracle, *sys, n, level_budget);
    profile.push_back(Json{{"n", rep.n},
                           {"m", rep.m},
                           {"value", norm_value_to_json(rep.value)},
                           {"indices", rep.indices},
                           {"exhaustive", rep.exhaustive}});
  }
  return Json{{"oracle", oracle->id()}, {"system", sys->id()}, {"profile", profile}};
}

Json run_wiw_cert(const Json& config) {
  FinVec x = FinVec::parse(require_string(config, "vector", "config"));
  WeightSchedule sched = schedule_from_config(config, "config");
  WiwSearchBudget budget;
  if (config.contains("budgets")) {
    const Json& b = config.at("budgets");
    budget.max_weight_index = static_cast<int>(
        optional_int(b, "max_weight_index", budget.max_weight_index, "config.budgets"));
    budget.depth = static_cast<int>(optional_int(b, "depth", budget.depth, "config.budgets"));
    budget.max_parts =
        static_cast<int>(optional_int(b, "max_parts", budget.max_parts, "config.budgets"));
    if (budget.max_weight_index < 1 || budget.depth < 1 || budget.max_parts < 1) {
      throw ValidationError("config.budgets: budgets must be positive");
    }
  }
  NormCertificate cert = wiw_lower_certificate(x, sched, budget);
  Json results{{"vector", x.str()},
               {"certificate", Json{{"value", rat_str(cert.value)},
                                    {"witness", cert.witness.encode()}}}};
  if (config.value("exhaustive", false)) {
    WiwExhaustiveCaps caps;
    caps.support_cap = static_cast<std::size_t>(
        optional_int(config, "exhaustive_support_cap", 10, "config"));
    auto ex = wiw_exhaustive_norm(x, sched, caps);
    results["exhaustive"] = Json{{"value", norm_value_to_json(ex.value)},
                                 {"witness", ex.best.encode()},
                                 {"weight_cap", rat_str(ex.weight_cap_used)},
                                 {"depth_cap", ex.depth_cap_used}};
  }
  return results;
}

Json run_khintchine(const Json& config) {
  auto fs = step_functions_from_config(config, "config");
  Rat tol = parse_rat(optional_string(config, "tolerance", "1/1000000000", "config"));
  int scale_bits = static_cast<int>(optional_int(config, "scale_bits", 64, "config"));
  KhintchineReport rep = khintchine_check(fs, tol, scale_bits);
  Json functions = Json::array();
  for (const auto& f : fs) functions.push_back(f.str());
  return Json{{"functions", functions},
              {"tolerance", rat_str(tol)},
              {"scale_bits", scale_bits},
              {"lhs", rat_str(rep.lhs)},
              {"rhs", Json{{"lower", rat_str(rep.rhs.lo)}, {"upper", rat_str(rep.rhs.hi)}}},
              {"bound_ok", rep.bound_ok}};
}

Json run_dor(const Json& config) {
  auto fs = step_functions_from_config(config, "config");
  Rat theta = parse_rat(require_string(config, "theta", "config"));
  std::string mode_str = optional_string(config, "mode", "exact", "config");
  DorMode mode;
  if (mode_str == "exact") {
    mode = DorMode::Exact;
  } else if (mode_str == "greedy") {
    mode = DorMode::Greedy;
  } else {
    throw ValidationError("config.mode: expected 'exact' or 'greedy'");
  }
  DorReport rep = dor_disjointify(fs, theta, mode);
  Json functions = Json::array();
  for (const auto& f : fs) functions.push_back(f.str());
  Json masses = Json::array();
  for (const Rat& m : assignment_masses(fs, rep.assignment)) masses.push_back(rat_str(m));
  return Json{{"functions", functions},
              {"theta", rat_str(theta)},
              {"mode", mode_str},
              {"success", rep.success},
              {"min_mass", rat_str(rep.min_mass)},
              {"level", rep.assignment.level},
              {"assignment", rep.assignment.owner},
              {"masses", masses},
              {"optimal", rep.optimal}};
}

Json run_diff_seq(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  int count = static_cast<int>(require_int(config, "count", "config"));
  Index start = optional_int(config, "start", 1, "config");
  if (count < 1 || count > 1000 || start < 1) throw ValidationError("config.count: bad range");
  Json vectors = Json::array();
  for (const auto& nv : difference_sequence(*oracle, count, start)) {
    vectors.push_back(Json{{"vector", nv.vec.str()}, {"norm", norm_value_to_json(nv.norm)}});
  }
  return Json{{"oracle", oracle->id()}, {"count", count}, {"start", start},
              {"vectors", vectors}};
}

Json run_cyclic_avg(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  const Json& vs = require_field(config, "vectors", "config");
  if (!vs.is_array() || vs.empty()) {
    throw ValidationError("config.vectors: expected a nonempty array of vectors");
  }
  std::vector<FinVec> ws;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) {
      throw ValidationError("config.vectors[" + std::to_string(i) + "]: expected a string");
    }
    ws.push_back(FinVec::parse(vs[i].get<std::string>()));
  }
  auto coeffs = coeffs_from_string(require_string(config, "coeffs", "config"), "config.coeffs");
  AveragingReport rep = cyclic_average_check(*oracle, ws, coeffs);
  return Json{{"oracle", oracle->id()},
              {"vectors", vs},
              {"coeffs", require_string(config, "coeffs", "config")},
              {"combined", rat_str(rep.combined)},
              {"cyclic_average", rat_str(rep.cyclic_average)},
              {"scaled_sum", rat_str(rep.scaled_sum)},
              {"triangle_ok", rep.triangle_ok},
              {"half_bound_ok", rep.half_bound_ok}};
}

Json run_profile_spreading(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  auto coeffs = coeffs_from_string(require_string(config, "coeffs", "config"), "config.coeffs");
  const Json& w = require_field(config, "window", "config");
  Index lo = require_int(w, "lo", "config.window");
  Index hi = require_int(w, "hi", "config.window");
  long cap = optional_int(w, "cap", 100000, "config.window");
  WindowProfileReport rep = spreading_window_profile(*oracle, coeffs, lo, hi, cap);
  return Json{{"oracle", oracle->id()},
              {"coeffs", require_string(config, "coeffs", "config")},
              {"lo", lo},
              {"hi", hi},
              {"min", norm_value_to_json(rep.min_value)},
              {"max", norm_value_to_json(rep.max_value)},
              {"min_window", rep.min_window},
              {"max_window", rep.max_window},
              {"windows", rep.windows},
              {"exhaustive", rep.exhaustive}};
}

Json run_profile_array(const Json& config) {
  OraclePtr oracle = oracle_from_config(config, "config");
  HaarPtr sys = haar_from_config(config, "config");
  const Json& a = require_field(config, "array", "config");
  int n = static_cast<int>(require_int(a, "n", "config.array"));
  Index pos_hi = require_int(a, "pos_hi", "config.array");
  long cap = optional_int(a, "cap", 100000, "config.array");
  int deepest_row = 1;
  while ((Index{1} << (deepest_row + 1)) - 2 < n) ++deepest_row;
  if (n >= 1 && deepest_row > sys->max_level()) {
    throw ValidationError("config.array.n: needs system levels up to " +
                          std::to_string(deepest_row));
  }
  ArrayProfileReport rep = asymptotic_array_profile(*oracle, *sys, n, pos_hi, cap);
  return Json{{"oracle", oracle->id()},
              {"system", sys->id()},
              {"n", n},
              {"pos_hi", pos_hi},
              {"min", norm_value_to_json(rep.min_value)},
              {"min_positions", rep.min_positions},
              {"diagonals", rep.diagonals},
              {"exhaustive", rep.exhaustive}};
}

}  // namespace

Json run_experiment(const Json& config) {
  if (!config.is_object()) throw ValidationError("config: expected an object");
  long version = require_int(config, "version", "config");
  if (version != 1) throw ValidationError("config.version: unsupported schema version");
  require_int(config, "seed", "config");  // mandatory for reproducibility
  std::string command = require_string(config, "command", "config");

  auto start = std::chrono::steady_clock::now();
  Json results;
  if (command == "norm") {
    results = run_norm(config);
  } else if (command == "riemann") {
    results = run_riemann(config);
  } else if (command == "haar-witness") {
    results = run_haar_witness(config);
  } else if (command == "wiw-cert") {
    results = run_wiw_cert(config);
  } else if (command == "khintchine") {
    results = run_khintchine(config);
  } else if (command == "dor") {
    results = run_dor(config);
  } else if (command == "diff-seq") {
    results = run_diff_seq(config);
  } else if (command == "cyclic-avg") {
    results = run_cyclic_avg(config);
  } else if (command == "profile-spreading") {
    results = run_profile_spreading(config);
  } else if (command == "profile-array") {
    results = run_profile_array(config);
  } else {
    throw ValidationError("config.command: unknown command '" + command + "'");
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  return Json{{"schema", 1},
              {"meta", Json{{"tool", "banachlab"},
                            {"version", kToolVersion},
                            {"timings_ms", Json{{"total", elapsed}}}}},
              {"config", config},
              {"results", results}};
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

bool same_value(const NormValue& a, const NormValue& b) {
  return a.lower == b.lower && a.upper == b.upper && a.exact == b.exact;
}

void check(std::vector<VerifyClaim>& claims, const std::string& name, bool pass,
           const std::string& detail) {
  claims.push_back({name, pass, pass ? "" : detail});
}

void verify_norm(const Json& config, const Json& results, std::vector<VerifyClaim>& claims) {
  OraclePtr oracle = oracle_from_config(config, "config");
  FinVec x = FinVec::parse(require_string(results, "vector", "results"));
  NormValue claimed = norm_value_from_json(require_field(results, "value", "results"),
                                           "results.value");
  NormValue fresh = safe_enclosure(*oracle, x);
  check(claims, "norm.value", same_value(claimed, fresh),
        "recomputed " + rat_str(fresh.lower) + ".." + rat_str(fresh.upper));
}

void verify_riemann(const Json& config, const Json& results, std::vector<VerifyClaim>& claims) {
  OraclePtr oracle = oracle_from_config(config, "config");
  FunctionSpec f = function_from_config(config, oracle, "config");
  const Json& profile = require_field(results, "profile", "results");
  for (const Json& entry : profile) {
    int m = static_cast<int>(require_int(entry, "level", "results.profile"));
    std::string name = "riemann[m=" + std::to_string(m) + "]";
    try {
      TaggedPartition tags =
          tags_from_json(m, require_field(entry, "tags", name), name + ".tags");
      std::vector<int> signs;
      if (entry.contains("signs")) {
        for (const Json& s : entry.at("signs")) signs.push_back(s.get<int>());
      }
      NormValue claimed =
          norm_value_from_json(require_field(entry, "value", name), name + ".value");
      FinVec vec = riemann_vector(f, tags, signs);
      NormValue fresh = scaled(safe_enclosure(*oracle, vec),
                               make_rat(1, int_pow2(static_cast<unsigned long>(m))));
      check(claims, name, same_value(claimed, fresh),
            "witness re-evaluates to " + rat_str(fresh.lower) + ".." + rat_str(fresh.upper));
    } catch (const Error& e) {
      check(claims, name, false, e.what());
    }
  }
}

void verify_haar_witness(const Json& config, const Json& results,
                         std::vector<VerifyClaim>& claims) {
  OraclePtr oracle = oracle_from_config(config, "config");
  HaarPtr sys = haar_from_config(config, "config");
  const Json& profile = require_field(results, "profile", "results");
  for (const Json& entry : profile) {
    int n = static_cast<int>(require_int(entry, "n", "results.profile"));
    int m = static_cast<int>(require_int(entry, "m", "results.profile"));
    std::string name = "haar-witness[n=" + std::to_string(n) + "]";
    try {
      NormValue claimed =
          norm_value_from_json(require_field(entry, "value", name), name + ".value");
      const Json& idx = require_field(entry, "indices", name);
      Index cells = Index{1} << m;
      bool ok = m >= n && static_cast<Index>(idx.size()) == cells;
      FinVec vec;
      for (Index j = 0; ok && j < cells; ++j) {
        Index i = idx[static_cast<std::size_t>(j)].get<Index>();
        if (i < cells || !sys->member(m, j, i)) {
          ok = false;
          break;
        }
        vec += oracle->basis_vector(i);
      }
      if (!ok) {
        check(claims, name, false, "witness indices invalid for level " + std::to_string(m));
        continue;
      }
      NormValue fresh = scaled(safe_enclosure(*oracle, vec),
                               make_rat(1, int_pow2(static_cast<unsigned long>(m))));
      check(claims, name, same_value(claimed, fresh),
            "witness re-evaluates to " + rat_str(fresh.lower) + ".." + rat_str(fresh.upper));
    } catch (const Error& e) {
      check(claims, name, false, e.what());
    }
  }
}

void verify_wiw_cert(const Json& config, const Json& results, std::vector<VerifyClaim>& claims) {
  WeightSchedule sched = schedule_from_config(config, "config");
  FinVec x = FinVec::parse(require_string(results, "vector", "results"));
  const Json& cert = require_field(results, "certificate", "results");
  try {
    WiwFunctional witness =
        WiwFunctional::decode(require_string(cert, "witness", "results.certificate"));
    Rat value = parse_rat(require_string(cert, "value", "results.certificate"));
    auto violation = find_violation(witness, sched);
    if (violation) {
      check(claims, "wiw-cert.witness", false,
            violation->rule + " at " + violation->where + ": " + violation->detail);
    } else {
      check(claims, "wiw-cert.witness", true, "");
      Rat fresh = eval_functional(witness, x, sched);
      check(claims, "wiw-cert.value", fresh == value, "witness evaluates to " + rat_str(fresh));
    }
  } catch (const Error& e) {
    check(claims, "wiw-cert.witness", false, e.what());
  }
  if (results.contains("exhaustive")) {
    const Json& ex = results.at("exhaustive");
    try {
      WiwFunctional witness =
          WiwFunctional::decode(require_string(ex, "witness", "results.exhaustive"));
      NormValue value = norm_value_from_json(require_field(ex, "value", "results.exhaustive"),
                                             "results.exhaustive.value");
      Rat fresh = eval_functional(witness, x, sched);
      check(claims, "wiw-cert.exhaustive", fresh == value.lower,
            "witness evaluates to " + rat_str(fresh));
    } catch (const Error& e) {
      check(claims, "wiw-cert.exhaustive", false, e.what());
    }
  }
}

void verify_khintchine(const Json& results, std::vector<VerifyClaim>& claims) {
  try {
    std::vector<StepFunction> fs;
    for (const Json& f : require_field(results, "functions", "results")) {
      fs.push_back(StepFunction::parse(f.get<std::string>()));
    }
    Rat tol = parse_rat(require_string(results, "tolerance", "results"));
    int scale_bits = static_cast<int>(require_int(results, "scale_bits", "results"));
    KhintchineReport rep = khintchine_check(fs, tol, scale_bits);
    const Json& rhs = require_field(results, "rhs", "results");
    bool ok = rat_str(rep.lhs) == require_string(results, "lhs", "results") &&
              rat_str(rep.rhs.lo) == require_string(rhs, "lower", "results.rhs") &&
              rat_str(rep.rhs.hi) == require_string(rhs, "upper", "results.rhs") &&
              rep.bound_ok == require_field(results, "bound_ok", "results").get<bool>();
    check(claims, "khintchine", ok, "recomputation disagrees with the record");
  } catch (const Error& e) {
    check(claims, "khintchine", false, e.what());
  }
}

void verify_dor(const Json& results, std::vector<VerifyClaim>& claims) {
  try {
    std::vector<StepFunction> fs;
    for (const Json& f : require_field(results, "functions", "results")) {
      fs.push_back(StepFunction::parse(f.get<std::string>()));
    }
    Rat theta = parse_rat(require_string(results, "theta", "results"));
    CellAssignment assignment;
    assignment.level = static_cast<int>(require_int(results, "level", "results"));
    for (const Json& o : require_field(results, "assignment", "results")) {
      assignment.owner.push_back(o.get<int>());
    }
    auto masses = assignment_masses(fs, assignment);
    Rat min_mass = masses.empty() ? Rat(0) : *std::min_element(masses.begin(), masses.end());
    bool ok = rat_str(min_mass) == require_string(results, "min_mass", "results");
    check(claims, "dor.min_mass", ok, "assignment re-evaluates to min mass " + rat_str(min_mass));
    bool success = require_field(results, "success", "results").get<bool>();
    check(claims, "dor.success", success == (min_mass >= theta * theta),
          "success flag inconsistent with masses");
  } catch (const Error& e) {
    check(claims, "dor", false, e.what());
  }
}

void verify_diff_seq(const Json& config, const Json& results, std::vector<VerifyClaim>& claims) {
  try {
    OraclePtr oracle = oracle_from_config(config, "config");
    const Json& vectors = require_field(results, "vectors", "results");
    Index start = require_int(results, "start", "results");
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < vectors.size() && ok; ++i) {
      FinVec vec = FinVec::parse(require_string(vectors[i], "vector", "results.vectors"));
      NormValue claimed = norm_value_from_json(
          require_field(vectors[i], "norm", "results.vectors"), "results.vectors.norm");
      FinVec raw = oracle->basis_vector(2 * (start + static_cast<Index>(i))) -
                   oracle->basis_vector(2 * (start + static_cast<Index>(i)) + 1);
      NormValue fresh = safe_enclosure(*oracle, raw);
      FinVec expect = raw;
      if (fresh.exact) expect *= Rat(1) / fresh.lower;
      if (!same_value(claimed, fresh) || vec != expect) {
        ok = false;
        detail = "entry " + std::to_string(i) + " does not re-evaluate";
      }
    }
    check(claims, "diff-seq", ok, detail);
  } catch (const Error& e) {
    check(claims, "diff-seq", false, e.what());
  }
}

void verify_cyclic_avg(const Json& config, const Json& results,
                       std::vector<VerifyClaim>& claims) {
  try {
    OraclePtr oracle = oracle_from_config(config, "config");
    std::vector<FinVec> ws;
    for (const Json& v : require_field(results, "vectors", "results")) {
      ws.push_back(FinVec::parse(v.get<std::string>()));
    }
    auto coeffs =
        coeffs_from_string(require_string(results, "coeffs", "results"), "results.coeffs");
    AveragingReport rep = cyclic_average_check(*oracle, ws, coeffs);
    bool ok = rat_str(rep.combined) == require_string(results, "combined", "results") &&
              rat_str(rep.cyclic_average) ==
                  require_string(results, "cyclic_average", "results") &&
              rat_str(rep.scaled_sum) == require_string(results, "scaled_sum", "results") &&
              rep.half_bound_ok == require_field(results, "half_bound_ok", "results").get<bool>();
    check(claims, "cyclic-avg", ok, "recomputation disagrees with the record");
  } catch (const Error& e) {
    check(claims, "cyclic-avg", false, e.what());
  }
}

void verify_profile_spreading(const Json& config, const Json& results,
                              std::vector<VerifyClaim>& claims) {
  try {
    OraclePtr oracle = oracle_from_config(config, "config");
    auto coeffs =
        coeffs_from_string(require_string(results, "coeffs", "results"), "results.coeffs");
    auto eval_window = [&](const Json& w) {
      FinVec v;
      for (std::size_t j = 0; j < w.size(); ++j) {
        v += coeffs[j] * oracle->basis_vector(w[j].get<Index>());
      }
      return safe_enclosure(*oracle, v);
    };
    NormValue min_claimed =
        norm_value_from_json(require_field(results, "min", "results"), "results.min");
    NormValue max_claimed =
        norm_value_from_json(require_field(results, "max", "results"), "results.max");
    NormValue min_fresh = eval_window(require_field(results, "min_window", "results"));
    NormValue max_fresh = eval_window(require_field(results, "max_window", "results"));
    check(claims, "profile-spreading.min", same_value(min_claimed, min_fresh),
          "min witness re-evaluates to " + rat_str(min_fresh.lower));
    check(claims, "profile-spreading.max", same_value(max_claimed, max_fresh),
          "max witness re-evaluates to " + rat_str(max_fresh.lower));
  } catch (const Error& e) {
    check(claims, "profile-spreading", false, e.what());
  }
}

void verify_profile_array(const Json& config, const Json& results,
                          std::vector<VerifyClaim>& claims) {
  try {
    OraclePtr oracle = oracle_from_config(config, "config");
    HaarPtr sys = haar_from_config(config, "config");
    int n = static_cast<int>(require_int(results, "n", "results"));
    const Json& pos = require_field(results, "min_positions", "results");
    FinVec v;
    for (int j = 0; j < n; ++j) {
      int k = j + 1;
      int level = 1;
      while ((Index{1} << (level + 1)) - 2 < k) ++level;
      Index cell = Index(k) - ((Index{1} << level) - 2) - 1;
      v += oracle->basis_vector(
          sys->kth_member(level, cell, pos[static_cast<std::size_t>(j)].get<Index>()));
    }
    NormValue fresh = scaled(safe_enclosure(*oracle, v), make_rat(1, n));
    NormValue claimed =
        norm_value_from_json(require_field(results, "min", "results"), "results.min");
    check(claims, "profile-array.min", same_value(claimed, fresh),
          "diagonal witness re-evaluates to " + rat_str(fresh.lower));
  } catch (const Error& e) {
    check(claims, "profile-array", false, e.what());
  }
}

}  // namespace

bool VerifyOutcome::all_pass() const {
  for (const auto& c : claims) {
    if (!c.pass) return false;
  }
  return true;
}

VerifyOutcome verify_record(const Json& record) {
  VerifyOutcome outcome;
  if (!record.is_object() || record.value("schema", 0) != 1) {
    outcome.claims.push_back({"record.schema", false, "unknown record schema"});
    return outcome;
  }
  std::string command = "record";
  try {
    const Json& config = require_field(record, "config", "record");
    const Json& results = require_field(record, "results", "record");
    command = require_string(config, "command", "record.config");
    if (command == "norm") {
      verify_norm(config, results, outcome.claims);
    } else if (command == "riemann") {
      verify_riemann(config, results, outcome.claims);
    } else if (command == "haar-witness") {
      verify_haar_witness(config, results, outcome.claims);
    } else if (command == "wiw-cert") {
      verify_wiw_cert(config, results, outcome.claims);
    } else if (command == "khintchine") {
      verify_khintchine(results, outcome.claims);
    } else if (command == "dor") {
      verify_dor(results, outcome.claims);
    } else if (command == "diff-seq") {
      verify_diff_seq(config, results, outcome.claims);
    } else if (command == "cyclic-avg") {
      verify_cyclic_avg(config, results, outcome.claims);
    } else if (command == "profile-spreading") {
      verify_profile_spreading(config, results, outcome.claims);
    } else if (command == "profile-array") {
      verify_profile_array(config, results, outcome.claims);
    } else {
      outcome.claims.push_back({"record.command", false, "unknown command '" + command + "'"});
    }
  } catch (const std::exception& e) {
    // Malformed or tampered structure fails as a named claim rather
    // than escaping the checker.
    outcome.claims.push_back({command, false, e.what()});
  }
  return outcome;
}

}  // namespace banachlab
