// Command-line front end: runs experiments from flags or a config file,
// writes JSON records (and CSV profiles), and verifies records.
//
// Exit codes: 0 success, 1 validation error, 2 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "banachlab/runner.hpp"

namespace {

using banachlab::Json;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw banachlab::ValidationError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw banachlab::ValidationError("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw banachlab::ValidationError("cannot write '" + path + "'");
  out << text;
}

// Profile entries to CSV: one line per level.
std::string profile_csv(const Json& results) {
  std::string csv = "level,lower,upper,exact\n";
  for (const Json& entry : results.at("profile")) {
    long level = entry.contains("n") ? entry.at("n").get<long>() : entry.at("level").get<long>();
    const Json& v = entry.at("value");
    csv += std::to_string(level) + "," + v.at("lower").get<std::string>() + "," +
           v.at("upper").get<std::string>() + "," + (v.at("exact").get<bool>() ? "1" : "0") + "\n";
  }
  return csv;
}

int emit_record(const Json& record, const std::string& out_path, const std::string& csv_path) {
  if (!out_path.empty()) {
    write_text(out_path, record.dump(2) + "\n");
  } else {
    std::cout << record.dump(2) << "\n";
  }
  if (!csv_path.empty() && record.at("results").contains("profile")) {
    write_text(csv_path, profile_csv(record.at("results")));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"banachlab — exact workbench for combinatorial Banach-space experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags (--out, --csv, ...) may follow the subcommand

  std::string out_path;
  std::string csv_path;
  long seed_override = -1;
  int threads = 1;
  app.add_option("--out", out_path, "write the JSON record here (default: stdout)");
  app.add_option("--csv", csv_path, "also write profile values as CSV");
  app.add_option("--seed-override", seed_override, "replace the config seed");
  app.add_option("--threads", threads, "worker threads (reserved; runs are deterministic)")
      ->check(CLI::PositiveNumber);

  // run --config FILE
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "JSON config file")->required();

  // Direct subcommands for the common cases.
  std::string oracle = "c0";
  std::string vector_text;
  auto* norm_cmd = app.add_subcommand("norm", "evaluate a vector under an oracle");
  norm_cmd->add_option("oracle", oracle, "oracle id")->required();
  norm_cmd->add_option("vector", vector_text, "vector as index:coeff pairs")->required();

  std::string function = "standard";
  std::string system = "canonical";
  int from = 1, to = 8;
  bool signed_sup = false;
  auto* riemann_cmd = app.add_subcommand("riemann", "adversarial Riemann-sum profile");
  riemann_cmd->add_option("oracle", oracle)->required();
  riemann_cmd->add_option("--function", function, "standard | haar");
  riemann_cmd->add_option("--system", system, "canonical | locations");
  riemann_cmd->add_option("--from", from);
  riemann_cmd->add_option("--to", to);
  riemann_cmd->add_flag("--signed", signed_sup, "maximize over per-cell signs too");

  auto* haar_cmd = app.add_subcommand("haar-witness", "witness profile over a Haar system");
  int m_cap = 0;
  haar_cmd->add_option("oracle", oracle)->required();
  haar_cmd->add_option("--system", system);
  haar_cmd->add_option("--from", from);
  haar_cmd->add_option("--to", to);
  haar_cmd->add_option("--m-cap", m_cap, "search levels up to this (default: each n itself)");

  auto* wiw_cmd = app.add_subcommand("wiw-cert", "certified lower bound for the X_iw norm");
  bool exhaustive = false;
  wiw_cmd->add_option("vector", vector_text)->required();
  wiw_cmd->add_flag("--exhaustive", exhaustive, "also run the bounded exhaustive search");

  auto* khintchine_cmd = app.add_subcommand("khintchine", "sign-average vs square function");
  std::string functions_path;
  khintchine_cmd->add_option("--functions", functions_path, "step-function file")->required();

  auto* dor_cmd = app.add_subcommand("dor", "disjointify step-function supports");
  std::string theta = "1";
  std::string mode = "exact";
  std::string assignment_csv;
  dor_cmd->add_option("--functions", functions_path, "step-function file")->required();
  dor_cmd->add_option("--theta", theta, "target constant in (0,1]");
  dor_cmd->add_option("--mode", mode, "exact | greedy");
  dor_cmd->add_option("--assignment-csv", assignment_csv, "write the cell,owner table here");

  auto* diff_cmd = app.add_subcommand("diff-seq", "normalized difference sequence of the basis");
  int diff_count = 4;
  long diff_start = 1;
  diff_cmd->add_option("oracle", oracle)->required();
  diff_cmd->add_option("--count", diff_count, "how many differences");
  diff_cmd->add_option("--start", diff_start, "first pair index");

  auto* cyclic_cmd = app.add_subcommand("cyclic-avg", "cyclic averaging check on block vectors");
  std::vector<std::string> cyclic_vectors;
  std::string cyclic_coeffs = "1 1";
  cyclic_cmd->add_option("oracle", oracle)->required();
  cyclic_cmd->add_option("--vec", cyclic_vectors, "block vectors (repeatable)")->required();
  cyclic_cmd->add_option("--coeffs", cyclic_coeffs, "nonnegative coefficients");

  auto* spread_cmd = app.add_subcommand("profile-spreading", "norm extremes over index windows");
  std::string coeffs = "1 1 1 1";
  long win_lo = 0, win_hi = 0;
  spread_cmd->add_option("oracle", oracle)->required();
  spread_cmd->add_option("--coeffs", coeffs, "window coefficients");
  spread_cmd->add_option("--lo", win_lo, "window start (default: window length)");
  spread_cmd->add_option("--hi", win_hi, "window end")->required();

  auto* array_cmd = app.add_subcommand("profile-array", "diagonal profile over system rows");
  int diag_n = 4;
  long pos_hi = 0;
  array_cmd->add_option("oracle", oracle)->required();
  array_cmd->add_option("--system", system);
  array_cmd->add_option("--n", diag_n, "diagonal length");
  array_cmd->add_option("--pos-hi", pos_hi, "largest row position")->required();

  auto* verify_cmd = app.add_subcommand("verify", "re-check every claim in a record");
  std::string record_path;
  verify_cmd->add_option("record", record_path, "record JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) {
      Json record = load_json(record_path);
      banachlab::VerifyOutcome outcome = banachlab::verify_record(record);
      for (const auto& claim : outcome.claims) {
        std::cout << (claim.pass ? "PASS " : "FAIL ") << claim.name;
        if (!claim.pass) std::cout << " — " << claim.detail;
        std::cout << "\n";
      }
      return outcome.all_pass() ? 0 : 2;
    }

    Json config;
    if (run_cmd->parsed()) {
      config = load_json(config_path);
    } else {
      config["version"] = 1;
      config["seed"] = 0;
      if (norm_cmd->parsed()) {
        config["command"] = "norm";
        config["oracle"] = oracle;
        config["vector"] = vector_text;
      } else if (riemann_cmd->parsed()) {
        config["command"] = "riemann";
        config["oracle"] = oracle;
        config["function"] = function;
        if (function == "haar") config["haar_system"] = system;
        config["levels"] = Json{{"from", from}, {"to", to}};
        config["signed"] = signed_sup;
      } else if (haar_cmd->parsed()) {
        config["command"] = "haar-witness";
        config["oracle"] = oracle;
        config["haar_system"] = system;
        config["levels"] = Json{{"from", from}, {"to", to}};
        if (m_cap > 0) config["budgets"] = Json{{"m_cap", m_cap}};
      } else if (wiw_cmd->parsed()) {
        config["command"] = "wiw-cert";
        config["vector"] = vector_text;
        config["exhaustive"] = exhaustive;
      } else if (khintchine_cmd->parsed()) {
        config["command"] = "khintchine";
        std::ifstream in(functions_path);
        if (!in) throw banachlab::ValidationError("cannot open '" + functions_path + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        Json fns = Json::array();
        for (const auto& f : banachlab::parse_step_functions(text)) fns.push_back(f.str());
        config["functions"] = fns;
      } else if (dor_cmd->parsed()) {
        config["command"] = "dor";
        std::ifstream in(functions_path);
        if (!in) throw banachlab::ValidationError("cannot open '" + functions_path + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        Json fns = Json::array();
        for (const auto& f : banachlab::parse_step_functions(text)) fns.push_back(f.str());
        config["functions"] = fns;
        config["theta"] = theta;
        config["mode"] = mode;
      } else if (diff_cmd->parsed()) {
        config["command"] = "diff-seq";
        config["oracle"] = oracle;
        config["count"] = diff_count;
        config["start"] = diff_start;
      } else if (cyclic_cmd->parsed()) {
        config["command"] = "cyclic-avg";
        config["oracle"] = oracle;
        config["vectors"] = cyclic_vectors;
        config["coeffs"] = cyclic_coeffs;
      } else if (spread_cmd->parsed()) {
        config["command"] = "profile-spreading";
        config["oracle"] = oracle;
        config["coeffs"] = coeffs;
        long n = 0;
        std::istringstream cs(coeffs);
        std::string tok;
        while (cs >> tok) ++n;
        config["window"] = Json{{"lo", win_lo > 0 ? win_lo : n}, {"hi", win_hi}};
      } else if (array_cmd->parsed()) {
        config["command"] = "profile-array";
        config["oracle"] = oracle;
        config["haar_system"] = system;
        config["array"] = Json{{"n", diag_n}, {"pos_hi", pos_hi}};
      }
    }

    if (seed_override >= 0) config["seed"] = seed_override;
    Json record = banachlab::run_experiment(config);
    int rc = emit_record(record, out_path, csv_path);
    if (dor_cmd->parsed() && !assignment_csv.empty()) {
      banachlab::CellAssignment assignment;
      assignment.level = record.at("results").at("level").get<int>();
      for (const Json& o : record.at("results").at("assignment")) {
        assignment.owner.push_back(o.get<int>());
      }
      write_text(assignment_csv, banachlab::assignment_to_csv(assignment));
    }
    return rc;
  } catch (const banachlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const banachlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
