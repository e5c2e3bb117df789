#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace mcforge {

/// Wall-clock cap for enumerations, read from MCFORGE_BUDGET_MS.
class Deadline {
 public:
  static Deadline from_env();
  static Deadline none() { return Deadline(); }

  bool expired() const;
  /// Throws BudgetExceeded naming `what` once the deadline has passed.
  void check(const std::string& what) const;
  std::optional<long long> budget_ms() const { return budget_ms_; }

 private:
  std::optional<long long> budget_ms_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace mcforge
