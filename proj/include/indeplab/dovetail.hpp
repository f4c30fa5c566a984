#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace indeplab {

// A resumable computation: step() advances one unit of work; once finished()
// is true, result() is fixed.
struct ResumableTask {
  std::function<bool()> finished;
  std::function<void()> step;
  std::function<std::string()> result;
};

struct DovetailOutcome {
  enum class Kind { Finished, BudgetExhausted };
  Kind kind = Kind::BudgetExhausted;
  int task = 0;  // 1 or 2; ties go to task 1
  std::string result;
  std::uint64_t rounds = 0;
};

// Alternates one step of each task per round. If both finish in the same
// round, task 1 wins.
inline DovetailOutcome dovetail(ResumableTask& t1, ResumableTask& t2, std::uint64_t round_budget) {
  DovetailOutcome out;
  for (std::uint64_t r = 1; r <= round_budget; ++r) {
    out.rounds = r;
    if (!t1.finished()) t1.step();
    if (!t2.finished()) t2.step();
    if (t1.finished()) {
      out.kind = DovetailOutcome::Kind::Finished;
      out.task = 1;
      out.result = t1.result();
      return out;
    }
    if (t2.finished()) {
      out.kind = DovetailOutcome::Kind::Finished;
      out.task = 2;
      out.result = t2.result();
      return out;
    }
  }
  out.kind = DovetailOutcome::Kind::BudgetExhausted;
  return out;
}

}  // namespace indeplab
