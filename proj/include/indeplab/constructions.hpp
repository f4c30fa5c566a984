#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "indeplab/dovetail.hpp"
#include "indeplab/engine.hpp"

namespace indeplab {

// --- racer -----------------------------------------------------------------

struct RacerVerdict {
  enum class Kind { Accept, Reject, StillRunning };
  Kind kind = Kind::StillRunning;
  std::uint64_t halt_step = 0;    // Accept
  std::size_t proof_index = 0;    // Reject: enumeration index of the NotHalts pair
  std::uint64_t rounds = 0;
};

// Dovetails simulation of (m, w) against a scan of the theorem enumeration
// for NotHalts(m, w); one simulation step and one enumeration check per
// round, simulation first.
inline RacerVerdict race(const MachinePtr& m, const std::string& w, std::uint64_t round_budget) {
  StepperPtr sim = make_stepper(m, w);
  Statement target;
  target.kind = Statement::Kind::NotHalts;
  target.m1 = m;
  target.w = w;
  const std::string target_ser = statement_ser(target);

  std::size_t idx = 0, found_idx = 0;
  bool found = false, horizon = false;
  ResumableTask t1{[&] { return sim->halted(); }, [&] { sim->step(); },
                   [&] { return std::to_string(sim->steps()); }};
  ResumableTask t2{[&] { return found; },
                   [&] {
                     if (horizon) return;
                     const auto* e = EnumerationStore::instance().at(idx);
                     if (!e) {
                       horizon = true;
                       return;
                     }
                     if (e->stmt.kind == Statement::Kind::NotHalts && e->stmt_ser == target_ser) {
                       found = true;
                       found_idx = idx;
                     }
                     ++idx;
                   },
                   [&] { return std::to_string(found_idx); }};
  DovetailOutcome out = dovetail(t1, t2, round_budget);
  RacerVerdict v;
  v.rounds = out.rounds;
  if (out.kind == DovetailOutcome::Kind::Finished) {
    if (out.task == 1) {
      v.kind = RacerVerdict::Kind::Accept;
      v.halt_step = sim->steps();
    } else {
      v.kind = RacerVerdict::Kind::Reject;
      v.proof_index = found_idx;
    }
  }
  return v;
}

inline RacerVerdict race(const MachineDescription& d, const std::string& w,
                         std::uint64_t round_budget) {
  return race(mk_raw(d), w, round_budget);
}

// --- fixed point -------------------------------------------------------------

// The statement the fixed-point machine hunts for: its own non-halting.
inline std::string fixed_point_target(const MachinePtr& m) {
  Statement t;
  t.kind = Statement::Kind::NotHalts;
  t.m1 = m;
  t.w = m->w;
  return statement_ser(t);
}

// Builds the proof-searcher whose search subject is the machine itself; the
// self-description embedding is checked by re-parsing the serialized machine
// and reproducing the search target from the copy.
inline std::pair<MachinePtr, std::string> build_fixed_point() {
  const std::string w_h = "";
  MachinePtr m = mk_fixed_point(w_h);
  validate_machine_any(*m);
  MachinePtr reparsed = machine_from_sexpr(sexpr_parse(machine_ser(m)));
  if (!same_machine(m, reparsed) || fixed_point_target(m) != fixed_point_target(reparsed))
    throw Error("fixed point: self-description embedding failed to reproduce the machine");
  return {m, w_h};
}

// --- threshold machines -------------------------------------------------------

inline MachinePtr build_O(const MachinePtr& m, const std::string& w) { return mk_o(m, w); }
inline MachinePtr build_O(const MachineDescription& d, const std::string& w) {
  return mk_o(mk_raw(d), w);
}

// The structural certificate a combinator emits for its output machine.
inline std::optional<Proof> make_timebound_proof(const MachinePtr& m) {
  auto d = derive_timebound(*m);
  if (!d) return std::nullopt;
  Proof p;
  p.kind = Proof::Kind::TimeBoundCertificate;
  p.subject.kind = Statement::Kind::TimeBound;
  p.subject.m1 = m;
  p.subject.bound = d->steps;
  p.deriv = *d;
  return p;
}

struct ThresholdProfile {
  bool all_ones = true;
  std::uint64_t m = 0;  // halt step when !all_ones
};

// One representative input per length (outputs are length-determined).
inline ThresholdProfile threshold_profile(const MachinePtr& o, int max_len) {
  if (o->kind != Machine::Kind::OComb)
    throw Error("threshold profile: machine was not built as a threshold machine");
  ThresholdProfile tp;
  bool seen_zero = false;
  for (int n = 0; n <= max_len; ++n) {
    RunOutcome r = run_bounded(o, zeros(std::size_t(n)), safety_budget());
    if (!r.halted()) throw Error("threshold profile: safety budget exhausted");
    if (r.output == "1") {
      if (seen_zero)
        throw Error("threshold profile: monotonicity violation at length " + std::to_string(n));
    } else if (r.output == "0") {
      if (!seen_zero) {
        seen_zero = true;
        tp.all_ones = false;
        tp.m = std::uint64_t(n);
      }
    } else {
      throw Error("threshold profile: non-bit output at length " + std::to_string(n));
    }
  }
  return tp;
}

// --- switch composition and languages -----------------------------------------

inline MachinePtr build_Q(const MachinePtr& m1, const MachinePtr& m2, const std::string& w) {
  return mk_q(m1, m2, w);
}
inline MachinePtr build_Q(const MachineDescription& m1, const MachineDescription& m2,
                          const std::string& w) {
  return mk_q(mk_raw(m1), mk_raw(m2), w);
}

struct LanguageView {
  MachinePtr decider;
};

inline bool lang_member(const LanguageView& v, const std::string& s) {
  RunOutcome r = run_bounded(v.decider, s, safety_budget());
  if (!r.halted()) throw Error("language: decider exhausted the safety budget on \"" + s + "\"");
  if (r.output == "1") return true;
  if (r.output == "0") return false;
  throw Error("language: decider output is not a bit on \"" + s + "\"");
}

// table must cover exactly the strings of length < m.
inline LanguageView patch_language(const LanguageView& base, const std::map<std::string, bool>& table,
                                   int m) {
  if (m < 0 || m > 20) throw Error("patch: bad threshold");
  std::string bits;
  for (int n = 0; n < m; ++n)
    for (auto& s : strings_of_length(n)) {
      auto it = table.find(s);
      if (it == table.end()) throw Error("patch: table missing entry for \"" + s + "\"");
      bits.push_back(it->second ? '1' : '0');
    }
  if (table.size() != bits.size()) throw Error("patch: table contains entries of length >= m");
  return LanguageView{mk_patch(base.decider, m, bits)};
}

struct AlmostEqualVerdict {
  bool divergent = false;
  std::uint64_t m = 0;                 // Equal-beyond(m)
  std::vector<std::string> witnesses;  // all disagreements found
};

// Probe of the almost-equality relation: Divergent iff a disagreement occurs
// in the top two probed lengths, else Equal-beyond(least m covering all
// disagreements). A probe, not a proof.
inline AlmostEqualVerdict almost_equal(const LanguageView& a, const LanguageView& b, int probe_len) {
  if (probe_len < 0 || probe_len > kMaxProfileLen) throw Error("almost-equal: bad probe length");
  AlmostEqualVerdict v;
  int top_disagreement = -1;
  for (int n = 0; n <= probe_len; ++n)
    for (auto& s : strings_of_length(n))
      if (lang_member(a, s) != lang_member(b, s)) {
        v.witnesses.push_back(s);
        top_disagreement = n;
      }
  if (top_disagreement >= probe_len - 1 && top_disagreement >= 0)
    v.divergent = true;
  else
    v.m = std::uint64_t(top_disagreement + 1);
  return v;
}

// --- conjecture demo -----------------------------------------------------------

// Halts quickly on inputs longer than one symbol; on shorter inputs it hunts
// for an even number above 4 that is not the sum of two odd primes.
inline MachinePtr build_goldbach_demo() { return mk_goldbach(); }

}  // namespace indeplab
