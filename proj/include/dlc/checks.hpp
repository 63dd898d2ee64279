#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlc/semigroup.hpp"

// The eleven verification criteria run by `dlcurves verify-all` and by the
// acceptance test binary.  Each criterion is an exact check with its own
// runtime budget; runners share nothing except the semigroup reduction,
// which the closed-form identity check reuses instead of recomputing.

namespace dlc::checks {

inline constexpr int kNumCriteria = 11;

struct CheckOptions {
  std::string data_dir = "data";
  std::uint64_t seed = 7;
  std::size_t psi_samples = 1000;
  std::size_t extension_samples = 100;
  double semigroup_budget_seconds = 0;  // 0 = unlimited
  std::string semigroup_checkpoint;     // empty = no checkpointing
  bool semigroup_resume = false;
  bool verbose = false;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool aborted = false;  // ran out of budget (semigroup stage): neither verdict
  std::string detail;
  double seconds = 0;
};

// Work shared between criteria within one invocation.
struct CheckContext {
  std::optional<sgp::WeierstrassResult> reduction;
};

CheckResult run_criterion(int id, const CheckOptions& opt, CheckContext& ctx);
std::vector<CheckResult> run_all(const CheckOptions& opt);

}  // namespace dlc::checks
