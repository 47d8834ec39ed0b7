#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hgpade {

struct SuiteResult {
  int id = 0;
  std::string title;
  std::string anchor;   // what the check is about, for failure messages
  bool passed = false;
  std::string message;
  double seconds = 0;
  double limit_seconds = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  /// Empty means every criterion.
  std::vector<int> only;
};

/// Runs one acceptance criterion (1..10). Exceptions become failures.
SuiteResult run_acceptance_criterion(int id, const SuiteOptions& options = {});

/// Runs the requested criteria in order; `on_result` sees each as it finishes.
std::vector<SuiteResult> run_acceptance(const SuiteOptions& options = {},
                                        const std::function<void(const SuiteResult&)>& on_result = {});

/// "criterion  3 PASS  (12.3 s / 120 s)  Wronskian chain: ..."
std::string format_result(const SuiteResult& result);

constexpr int kCriterionCount = 10;

}  // namespace hgpade
