#pragma once

// Experiment runner and the independent record checker.  Records embed
// every witness needed to re-establish their claims through the public
// evaluation APIs, without re-running any search.

#include <string>
#include <vector>

#include "banachlab/records.hpp"

namespace banachlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Validates the config, executes the command and returns the record:
/// {"schema": 1, "meta": {...timings...}, "config": <echo>, "results": ...}.
/// Identical configs produce identical config+results payloads.
Json run_experiment(const Json& config);

struct VerifyClaim {
  std::string name;
  bool pass;
  std::string detail;
};

struct VerifyOutcome {
  std::vector<VerifyClaim> claims;
  bool all_pass() const;
};

/// Re-validates and re-evaluates every witness and value embedded in a
/// record.  Tampering with any claimed value fails the named claim.
VerifyOutcome verify_record(const Json& record);

}  // namespace banachlab
