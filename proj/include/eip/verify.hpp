#pragma once

// Property suite run by `eip verify`. Each check is self-contained and
// reports its own failure detail; an exception inside a check is a failure.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace eip {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Smaller ranges, a few seconds in total.
  bool quick = false;
  /// Called after each check, in order.
  std::function<void(const CheckResult&)> on_result;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opts);

}  // namespace eip
