// ===== validate.hpp — structure well-formedness reports =====
//
// validate() covers the base obligations: the partitions really partition
// the state space, every per-cell posterior is a probability measure
// supported inside its cell, priors (when present) are probability
// measures, and signal assignments (when present) match the receiving
// player's information. Posteriors being attached to cells and events
// living in the powerset make the remaining base assumptions structural;
// they are reported as satisfied by construction.
//
// validate_ai() covers the extra obligations of the conditioning modes:
// each player's cell labels pick out exactly their cells (A5), and label
// readings across players form partitions (A6 for the outer mode, its
// restriction to the reader's own labels, A6', for the inner mode).

#pragma once

#include "ambilogic/semantics.hpp"
#include "ambilogic/structure.hpp"

#include <string>
#include <vector>

namespace ambilogic {

enum class CheckStatus : std::uint8_t { Pass, Fail, ByConstruction, Skipped };

const char* check_status_name(CheckStatus status);

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const CheckResult& c : checks) {
      if (c.status == CheckStatus::Fail) return false;
    }
    return true;
  }

  const CheckResult* find(const std::string& id) const {
    for (const CheckResult& c : checks) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
};

ValidationReport validate(const Structure& m);

// mode selects which label obligations apply: OutAi checks A5 + A6,
// InAi checks A5 + A6'. Label extensions are computed under the matching
// base relation (no priors needed to validate).
ValidationReport validate_ai(const Structure& m, Mode mode);

}  // namespace ambilogic
