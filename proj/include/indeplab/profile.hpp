#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "indeplab/config.hpp"
#include "indeplab/engine.hpp"

namespace indeplab {

struct ProfileEntry {
  int length = 0;
  std::uint64_t max_steps = 0;
  std::string witness;  // an input attaining the maximum
};

// t_M(n) = max steps over all 2^n inputs of length n, for n = 0..max_len.
// Requires the machine to halt within the safety budget on every probed
// input; the offending input is named otherwise.
inline std::vector<ProfileEntry> time_complexity_profile(const MachinePtr& m, int max_len) {
  if (max_len < 0 || max_len > kMaxProfileLen)
    throw Error("profile: max_len exceeds the exhaustive cut-off of " +
                std::to_string(kMaxProfileLen));
  std::vector<ProfileEntry> table;
  for (int n = 0; n <= max_len; ++n) {
    ProfileEntry e;
    e.length = n;
    bool first = true;
    for (auto& s : strings_of_length(n)) {
      RunOutcome r = run_bounded(m, s, safety_budget());
      if (!r.halted())
        throw Error("profile: safety budget exhausted on input \"" + s +
                    "\" (machine not known total at this scale)");
      if (first || r.steps_used > e.max_steps) {
        e.max_steps = r.steps_used;
        e.witness = s;
        first = false;
      }
    }
    table.push_back(std::move(e));
  }
  return table;
}

inline std::vector<ProfileEntry> time_complexity_profile(const MachineDescription& d, int max_len) {
  return time_complexity_profile(mk_raw(d), max_len);
}

// One line per applied transition plus a final outcome line.
inline std::string trace_run(const MachineDescription& d, const std::string& input,
                             std::uint64_t budget) {
  std::ostringstream out;
  Configuration c = initial_config(d, input);
  while (c.state != d.halt() && c.steps < budget) {
    char read = tape_read(c, c.head);
    const Transition& t = d.delta(c.state, *sym_from_char(read));
    int q = c.state;
    std::size_t h = c.head;
    step_once(d, c);
    out << "step " << c.steps << ": state=" << q << " head=" << h << " read=" << read
        << " write=" << sym_char(t.write) << " move=" << move_char(t.move) << "\n";
  }
  if (c.state == d.halt())
    out << "Halted, steps " << c.steps << ", output \"" << read_output(c) << "\"\n";
  else
    out << "Budget-Exhausted, steps " << c.steps << "\n";
  return out.str();
}

}  // namespace indeplab
