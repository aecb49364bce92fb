#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadbound {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Slack applied to the inequality checks (the bound comparisons of the
  /// adversary/witness criteria).
  double slack = 1e-10;
  /// Self-test hook: multiplies the gamma-form bound inside the consistency
  /// identity, so any nonzero value must turn criterion 1 red.
  double gamma_perturb = 0.0;
  std::uint64_t seed = 20240801u;
};

/// Runs the full verification suite; one result per criterion, in order.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt);

}  // namespace quadbound
