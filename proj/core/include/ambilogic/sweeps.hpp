// ===== sweeps.hpp — seeded property sweeps =====
//
// Each suite draws structures from the generator under a configuration
// that establishes its premise (common interpretation, signals, a common
// prior, ...) and checks one family of claims with exact rational
// arithmetic. A sweep is deterministic in (suite, options); a violation
// records the seed and the first failing instance in enough detail to
// reproduce it by hand.

#pragma once

#include "ambilogic/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ambilogic {

struct SweepOptions {
  std::uint64_t seed_begin = 0;
  int seed_count = 200;
  int depth = 2;
};

struct SweepViolation {
  std::uint64_t seed = 0;
  std::string detail;
};

struct SweepResult {
  std::string suite;
  int seeds_run = 0;
  // Property instances whose premise held and which were therefore checked.
  long long cases_checked = 0;
  std::vector<SweepViolation> violations;
  bool truncated = false;  // more violations occurred than were recorded
  bool ok() const { return violations.empty(); }
};

// Suite names in canonical order.
const std::vector<std::string>& sweep_suite_names();

// One-line description; throws std::invalid_argument on an unknown name.
const std::string& sweep_suite_description(const std::string& suite);

// Runs one suite over seeds [seed_begin, seed_begin + seed_count).
// Throws std::invalid_argument on an unknown name.
SweepResult run_sweep(const std::string& suite, const SweepOptions& opts = {});

}  // namespace ambilogic
