#include "mcforge/budget.hpp"

#include <cstdlib>

#include "mcforge/error.hpp"

namespace mcforge {

Deadline Deadline::from_env() {
  Deadline d;
  if (const char* env = std::getenv("MCFORGE_BUDGET_MS")) {
    char* end = nullptr;
    long long ms = std::strtoll(env, &end, 10);
    if (end != env && ms > 0) d.budget_ms_ = ms;
  }
  return d;
}

bool Deadline::expired() const {
  if (!budget_ms_) return false;
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  return elapsed.count() > *budget_ms_;
}

void Deadline::check(const std::string& what) const {
  if (expired())
    throw BudgetExceeded(what + ": time budget of " + std::to_string(*budget_ms_) + " ms exhausted");
}

}  // namespace mcforge
