#pragma once

#include <cstdint>
#include <cstdlib>

namespace indeplab {

// Guard against non-total machines during exhaustive runs. Overridable via
// INDEPLAB_SAFETY_BUDGET.
inline std::uint64_t safety_budget() {
  static std::uint64_t v = [] {
    if (const char* e = std::getenv("INDEPLAB_SAFETY_BUDGET")) {
      char* end = nullptr;
      unsigned long long x = std::strtoull(e, &end, 10);
      if (end && *end == '\0' && x > 0) return static_cast<std::uint64_t>(x);
    }
    return static_cast<std::uint64_t>(1000000);
  }();
  return v;
}

// Exhaustive profiling cut-off (2^n inputs per length).
inline constexpr int kMaxProfileLen = 16;

// Non-halting certificates must witness a configuration repeat within this
// many steps; keeps proof checking and theorem enumeration desk-feasible.
inline constexpr std::uint64_t kCycleCap = 512;

}  // namespace indeplab
