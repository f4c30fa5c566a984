#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "indeplab/config.hpp"
#include "indeplab/encoding.hpp"
#include "indeplab/theory.hpp"

namespace indeplab {

// --- stepper: uniform step-exact execution of any machine expression -------

class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual bool halted() const = 0;
  virtual void step() = 0;  // no-op once halted
  virtual std::uint64_t steps() const = 0;
  virtual std::string snapshot() const = 0;  // excludes the step count
  virtual std::string output() const = 0;    // defined once halted
};
using StepperPtr = std::unique_ptr<Stepper>;

StepperPtr make_stepper(const MachinePtr& m, const std::string& input);
RunOutcome run_bounded(const MachinePtr& m, const std::string& input, std::uint64_t budget);

struct CheckResult {
  bool accepted = false;
  std::string reason;  // machine-readable; empty when accepted
};
CheckResult check_proof(const Statement& s, const Proof& p);

int eval_f(std::uint64_t n, const EvaluatorSpec& ev);
std::uint64_t eval_T(std::uint64_t n, const EvaluatorSpec& ev);

class RawStepper final : public Stepper {
 public:
  RawStepper(MachineDescription d, const std::string& input)
      : m_(std::move(d)), c_(initial_config(m_, input)) {}
  bool halted() const override { return c_.state == m_.halt(); }
  void step() override {
    if (!halted()) step_once(m_, c_);
  }
  std::uint64_t steps() const override { return c_.steps; }
  std::string snapshot() const override { return config_snapshot(c_); }
  std::string output() const override { return read_output(c_); }
  const Configuration& config() const { return c_; }

 private:
  MachineDescription m_;
  Configuration c_;
};

// Total machine with a precomputed answer: just counts off its step cost.
class CounterStepper final : public Stepper {
 public:
  CounterStepper(std::uint64_t cost, std::string out) : cost_(cost), out_(std::move(out)) {}
  bool halted() const override { return done_ >= cost_; }
  void step() override {
    if (!halted()) ++done_;
  }
  std::uint64_t steps() const override { return done_; }
  std::string snapshot() const override { return "c:" + std::to_string(done_); }
  std::string output() const override { return out_; }

 private:
  std::uint64_t cost_, done_ = 0;
  std::string out_;
};

// Sequential phases: counting ticks or sub-machines; the finalizer maps the
// sub-machine outputs to the overall output.
class SeqStepper final : public Stepper {
 public:
  struct Phase {
    std::uint64_t count = 0;
    StepperPtr inner;  // when set, count is ignored
  };
  SeqStepper(std::vector<Phase> ph, std::function<std::string(const std::vector<std::string>&)> fin)
      : phases_(std::move(ph)), finalize_(std::move(fin)) {
    settle();
  }
  bool halted() const override { return pi_ == phases_.size(); }
  void step() override {
    if (halted()) return;
    Phase& p = phases_[pi_];
    if (p.inner)
      p.inner->step();
    else
      ++ci_;
    ++total_;
    settle();
  }
  std::uint64_t steps() const override { return total_; }
  std::string snapshot() const override {
    if (halted()) return "s:end";
    const Phase& p = phases_[pi_];
    std::string s = "s" + std::to_string(pi_) + ":";
    return p.inner ? s + p.inner->snapshot() : s + std::to_string(ci_);
  }
  std::string output() const override {
    if (!halted()) throw Error("stepper: output requested before halt");
    return out_;
  }

 private:
  void settle() {
    while (pi_ < phases_.size()) {
      Phase& p = phases_[pi_];
      if (p.inner) {
        if (!p.inner->halted()) return;
        outs_.push_back(p.inner->output());
      } else if (ci_ < p.count) {
        return;
      }
      ++pi_;
      ci_ = 0;
    }
    out_ = finalize_(outs_);
  }
  std::vector<Phase> phases_;
  std::function<std::string(const std::vector<std::string>&)> finalize_;
  std::size_t pi_ = 0;
  std::uint64_t ci_ = 0, total_ = 0;
  std::vector<std::string> outs_;
  std::string out_;
};

// n -> m0 on the all-zeros string of length m2(n); one transfer step between
// the stages and one final step, so steps = t(m2) + t(m0) + 2 exactly.
class DiagStepper final : public Stepper {
 public:
  DiagStepper(MachinePtr m0, StepperPtr m2run) : m0_(std::move(m0)), cur_(std::move(m2run)) {}
  bool halted() const override { return phase_ == 2; }
  void step() override;
  std::uint64_t steps() const override { return total_; }
  std::string snapshot() const override {
    if (halted()) return "d:end";
    return "d" + std::to_string(phase_) + ":" + cur_->snapshot();
  }
  std::string output() const override {
    if (!halted()) throw Error("stepper: output requested before halt");
    return out_;
  }

 private:
  MachinePtr m0_;
  StepperPtr cur_;
  int phase_ = 0;
  std::uint64_t total_ = 0;
  std::string out_;
};

// Searches the theorem enumeration for its own non-halting statement; the
// advancing search index keeps its configurations from ever repeating.
class FixedPointStepper final : public Stepper {
 public:
  explicit FixedPointStepper(std::string target_stmt_ser) : target_(std::move(target_stmt_ser)) {}
  bool halted() const override { return found_; }
  void step() override;
  std::uint64_t steps() const override { return nsteps_; }
  std::string snapshot() const override { return "fx:" + std::to_string(idx_); }
  std::string output() const override { return "1"; }

 private:
  std::string target_;
  std::uint64_t idx_ = 0, nsteps_ = 0;
  bool found_ = false;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// n is the sum of two odd primes.
inline bool goldbach_holds(std::uint64_t n) {
  for (std::uint64_t p = 3; p <= n / 2; p += 2)
    if (is_prime(p) && is_prime(n - p)) return true;
  return false;
}

// Step k tests the even number 4 + 2k; halts only on a Goldbach
// counterexample above 4.
class GoldbachStepper final : public Stepper {
 public:
  bool halted() const override { return found_; }
  void step() override {
    if (found_) return;
    ++k_;
    if (!goldbach_holds(4 + 2 * k_)) found_ = true;
  }
  std::uint64_t steps() const override { return k_; }
  std::string snapshot() const override { return "gb:" + std::to_string(k_); }
  std::string output() const override { return "1"; }

 private:
  std::uint64_t k_ = 0;
  bool found_ = false;
};

// --- cached raw-simulation summaries ---------------------------------------

// One bounded simulation per (machine, input): either the exact halt step, or
// the canonical first configuration repeat within the cycle cap, or neither.
struct SimSummary {
  bool halts = false;
  std::uint64_t halt_step = 0;
  bool cycles = false;
  std::uint64_t prefix = 0, cycle = 0;
};

inline SimSummary simulate_raw_summary(const MachineDescription& d, const std::string& w) {
  SimSummary s;
  Configuration c = initial_config(d, w);
  std::unordered_map<std::string, std::uint64_t> seen;
  for (std::uint64_t j = 0; j <= kCycleCap; ++j) {
    if (c.state == d.halt()) {
      s.halts = true;
      s.halt_step = c.steps;
      return s;
    }
    std::string snap = config_snapshot(c);
    auto it = seen.find(snap);
    if (it != seen.end()) {
      s.cycles = true;
      s.prefix = it->second;
      s.cycle = j - it->second;
      return s;
    }
    seen.emplace(std::move(snap), j);
    step_once(d, c);
  }
  return s;
}

inline const SimSummary& sim_summary(const MachineDescription& d, const std::string& mser,
                                     const std::string& w) {
  static std::mutex mu;
  static std::unordered_map<std::string, SimSummary> cache;
  std::string key = mser + "|" + w;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  SimSummary s = simulate_raw_summary(d, w);
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(std::move(key), s).first->second;
}

// --- theorem enumeration ----------------------------------------------------

// The k-indexed enumeration of all accepted (statement, proof) pairs, ordered
// length-lexicographically by the canonical proof-object serialization (which
// embeds its subject, so it identifies the pair). Built lazily one
// serialization length at a time up to the desk-scale wall; pairs past the
// wall are out of the horizon.
class EnumerationStore {
 public:
  static constexpr int kSerWall = 47;

  struct Entry {
    Statement stmt;
    Proof proof;
    std::string stmt_ser;
    std::string pair_ser;
  };

  static EnumerationStore& instance() {
    static EnumerationStore s;
    return s;
  }

  // nullptr once the horizon is exhausted; pointers stay valid forever.
  const Entry* at(std::size_t k) {
    std::lock_guard<std::mutex> lk(mu_);
    while (k >= entries_.size() && built_len_ < kSerWall) build_len(++built_len_);
    return k < entries_.size() ? &entries_[k] : nullptr;
  }

  std::size_t known_size_at_wall() {
    std::lock_guard<std::mutex> lk(mu_);
    while (built_len_ < kSerWall) build_len(++built_len_);
    return entries_.size();
  }

 private:
  EnumerationStore() = default;
  std::mutex mu_;
  int built_len_ = 0;
  std::deque<Entry> entries_;

  struct PoolMachine {
    MachineDescription desc;
    MachinePtr m;
    std::string ser;
  };

  // All canonical machines with at most two states.
  static const std::vector<PoolMachine>& pool() {
    static const std::vector<PoolMachine> p = [] {
      std::vector<PoolMachine> v;
      auto add = [&](MachineDescription d) {
        PoolMachine pm;
        pm.m = mk_raw(d);
        pm.desc = std::move(d);
        pm.ser = machine_ser(pm.m);
        v.push_back(std::move(pm));
      };
      add(halt_only_machine());
      // Every 2-state row for the start state; the halt row is fixed.
      for (int le = 0; le < 2; ++le)
        for (int t0 = 0; t0 < 18; ++t0)
          for (int t1 = 0; t1 < 18; ++t1)
            for (int tb = 0; tb < 18; ++tb) {
              auto tr = [](int code) {
                return Transition{code / 9, Sym(1 + (code / 3) % 3), Move(code % 3)};
              };
              std::vector<std::array<Transition, 4>> rows(2);
              rows[0][0] = {le, Sym::LeftEnd, Move::R};
              rows[0][1] = tr(t0);
              rows[0][2] = tr(t1);
              rows[0][3] = tr(tb);
              rows[1] = halt_row(1);
              if (is_halt_like(rows, 0)) continue;  // duplicate halt state
              add(validate_machine_table(2, 0, 1, rows));
            }
      return v;
    }();
    return p;
  }

  // Machine expressions short enough to appear inside an O time-bound pair
  // at or below the wall (serialization length <= cap).
  static std::vector<MachinePtr> short_inner_machines(int cap) {
    std::vector<MachinePtr> v;
    auto add = [&](MachinePtr m) {
      if (int(machine_ser(m).size()) <= cap) v.push_back(std::move(m));
    };
    add(mk_raw(halt_only_machine()));  // (tm 1); larger raw tables exceed any desk cap
    add(mk_goldbach());
    for (auto& tag : builtin_tags()) add(mk_builtin(tag));
    for (std::uint64_t val = 0; val <= 63; ++val) add(mk_const_nat(val));
    for (int wl = 0; wl <= cap; ++wl)
      if (6 + wl <= cap)
        for (auto& w : strings_of_length(wl)) add(mk_fixed_point(w));
    return v;
  }

  void build_len(int len) {
    std::vector<Entry> staged;
    auto add = [&](Statement st, Proof pr) {
      Entry e;
      e.pair_ser = proof_ser(pr);
      if (int(e.pair_ser.size()) != len) return;
      e.stmt_ser = statement_ser(st);
      e.stmt = std::move(st);
      e.proof = std::move(pr);
      staged.push_back(std::move(e));
    };

    // Halts(m, w) with canonical full traces; raw machines only.
    for (auto& pm : pool()) {
      int tmin = pm.desc.n == 1 ? 0 : 1;
      int ms = int(pm.ser.size());
      for (int wl = 0; wl <= 24; ++wl) {
        int lower = 4 + (6 + ms + wl) + 1 + 5 + (tmin + 1) * (10 + wl) + 1;
        if (lower > len) break;
        for (auto& w : strings_of_length(wl)) {
          const SimSummary& ss = sim_summary(pm.desc, pm.ser, w);
          if (!ss.halts || ss.halt_step > 16) continue;
          Statement st;
          st.kind = Statement::Kind::Halts;
          st.m1 = pm.m;
          st.w = w;
          Proof pr;
          pr.kind = Proof::Kind::HaltTrace;
          pr.subject = st;
          pr.halt_steps = ss.halt_step;
          Configuration c = initial_config(pm.desc, w);
          pr.trace.push_back(c);
          for (std::uint64_t i = 0; i < ss.halt_step; ++i) {
            step_once(pm.desc, c);
            pr.trace.push_back(c);
          }
          add(std::move(st), std::move(pr));
        }
      }
    }

    // NotHalts(m, w) with canonical first-repeat cycle certificates.
    for (auto& pm : pool()) {
      if (pm.desc.n < 2) continue;
      int ms = int(pm.ser.size());
      int wl_lo = std::max(0, len - ms - 25), wl_hi = len - ms - 21;
      for (int wl = wl_lo; wl <= wl_hi && wl <= 24; ++wl) {
        for (auto& w : strings_of_length(wl)) {
          const SimSummary& ss = sim_summary(pm.desc, pm.ser, w);
          if (!ss.cycles) continue;
          Statement st;
          st.kind = Statement::Kind::NotHalts;
          st.m1 = pm.m;
          st.w = w;
          Proof pr;
          pr.kind = Proof::Kind::CycleCertificate;
          pr.subject = st;
          pr.prefix = ss.prefix;
          pr.cycle = ss.cycle;
          add(std::move(st), std::move(pr));
        }
      }
    }

    auto add_timebound = [&](const MachinePtr& m) {
      auto d = derive_timebound(*m);
      if (!d) return;
      Statement st;
      st.kind = Statement::Kind::TimeBound;
      st.m1 = m;
      st.bound = d->steps;
      Proof pr;
      pr.kind = Proof::Kind::TimeBoundCertificate;
      pr.subject = st;
      pr.deriv = *d;
      add(std::move(st), std::move(pr));
    };

    // TimeBound of builtins.
    for (auto& tag : builtin_tags()) add_timebound(mk_builtin(tag));

    // TimeBound of threshold machines O<inner, w>; a pair costs
    // 36 + |inner serialization| + |w| characters, which bounds both parts.
    for (auto& inner : short_inner_machines(len - 36)) {
      int wl = len - 36 - int(machine_ser(inner).size());
      if (wl < 0 || wl > 24) continue;
      for (auto& w : strings_of_length(wl)) add_timebound(mk_o(inner, w));
    }

    std::sort(staged.begin(), staged.end(),
              [](const Entry& a, const Entry& b) { return a.pair_ser < b.pair_ser; });
    for (auto& e : staged) entries_.push_back(std::move(e));
  }
};

inline std::pair<Statement, Proof> enumerate_theorems(std::size_t k) {
  const auto* e = EnumerationStore::instance().at(k);
  if (!e) throw Error("enumeration horizon exhausted at index " + std::to_string(k));
  return {e->stmt, e->proof};
}

inline void FixedPointStepper::step() {
  if (found_) return;
  ++nsteps_;
  const auto* e = EnumerationStore::instance().at(idx_);
  ++idx_;
  if (e && e->stmt_ser == target_) found_ = true;
}

inline void DiagStepper::step() {
  if (halted()) return;
  if (phase_ == 0) {
    if (!cur_->halted()) {
      cur_->step();
      ++total_;
      return;
    }
    // transfer step: read the intermediate value, set up the outer run
    std::string mid = cur_->output();
    if (mid.size() > 63) throw Error("composition: intermediate value too large");
    std::uint64_t v = string_num(mid);
    if (v > (std::uint64_t(1) << 20)) throw Error("composition: intermediate value too large");
    cur_ = make_stepper(m0_, zeros(v));
    phase_ = 1;
    ++total_;
    return;
  }
  if (!cur_->halted()) {
    cur_->step();
    ++total_;
    return;
  }
  out_ = cur_->output();  // final step
  phase_ = 2;
  ++total_;
}

// --- builtin cost model ------------------------------------------------------

inline StepperPtr builtin_stepper(const std::string& tag, const std::string& s) {
  std::uint64_t n = s.size();
  auto value = [&]() {
    if (s.size() > 63) throw Error("builtin: input value too large");
    return string_num(s);
  };
  auto bit = [](bool b) { return std::string(b ? "1" : "0"); };
  std::uint64_t ones = std::uint64_t(std::count(s.begin(), s.end(), '1'));
  if (tag == "c0") return std::make_unique<CounterStepper>(n + 1, "0");
  if (tag == "c1") return std::make_unique<CounterStepper>(n + 1, "1");
  if (tag == "par") return std::make_unique<CounterStepper>(n + 1, s.empty() ? "0" : std::string(1, s.back()));
  if (tag == "pop") return std::make_unique<CounterStepper>(n + 1, bit(ones % 2 == 1));
  if (tag == "lenpar") return std::make_unique<CounterStepper>(n + 1, bit(n % 2 == 0));
  if (tag == "exp")
    return std::make_unique<CounterStepper>(std::uint64_t(1) << std::min<std::uint64_t>(n, 20),
                                            bit(ones % 2 == 1));
  if (tag == "id") return std::make_unique<CounterStepper>(1, s);
  if (tag == "dbl") return std::make_unique<CounterStepper>(n + 1, nat_to_bits(2 * value()));
  if (tag == "len") return std::make_unique<CounterStepper>(n + 1, nat_to_bits(n));
  throw Error("unknown builtin machine tag: " + tag);
}

// --- make_stepper ------------------------------------------------------------

inline StepperPtr make_stepper(const MachinePtr& m, const std::string& input) {
  using K = Machine::Kind;
  if (!is_bits(input)) throw Error("input must be a binary string");
  switch (m->kind) {
    case K::Raw: return std::make_unique<RawStepper>(m->desc, input);
    case K::Builtin: return builtin_stepper(m->tag, input);
    case K::ConstNat:
      return std::make_unique<CounterStepper>(input.size() + 1, nat_to_bits(m->cval));
    case K::OComb:
    case K::QComb: {
      // threshold part: simulate the embedded machine on w for |s| steps
      std::uint64_t n = input.size();
      StepperPtr inner = make_stepper(m->a, m->w);
      while (!inner->halted() && inner->steps() < n) inner->step();
      bool halted_within = inner->halted();
      std::uint64_t o_cost = n + std::min(inner->steps(), n) + 1;
      std::string o_out = halted_within ? "0" : "1";
      if (m->kind == K::OComb) return std::make_unique<CounterStepper>(o_cost, o_out);
      if (o_out == "1") return std::make_unique<CounterStepper>(o_cost + 1, "1");
      std::vector<SeqStepper::Phase> ph(3);
      ph[0].count = o_cost;
      ph[1].inner = make_stepper(m->b, input);
      ph[2].count = 1;
      return std::make_unique<SeqStepper>(
          std::move(ph), [](const std::vector<std::string>& o) { return o.at(0); });
    }
    case K::PatchComb: {
      if (int(input.size()) < m->patch_m) {
        std::size_t idx = (std::size_t(1) << input.size()) - 1 + string_num(input);
        return std::make_unique<CounterStepper>(2, std::string(1, m->patch_bits.at(idx)));
      }
      std::vector<SeqStepper::Phase> ph(2);
      ph[0].count = 1;
      ph[1].inner = make_stepper(m->a, input);
      return std::make_unique<SeqStepper>(
          std::move(ph), [](const std::vector<std::string>& o) { return o.at(0); });
    }
    case K::DiagCompose: return std::make_unique<DiagStepper>(m->a, make_stepper(m->b, input));
    case K::FixedPoint: {
      Statement target;
      target.kind = Statement::Kind::NotHalts;
      target.m1 = m;
      target.w = m->w;
      return std::make_unique<FixedPointStepper>(statement_ser(target));
    }
    case K::SwitchU: {
      int f = eval_f(string_num(input), *m->ev);
      std::vector<SeqStepper::Phase> ph(2);
      ph[0].inner = make_stepper(m->a, input);
      ph[1].count = 1;
      return std::make_unique<SeqStepper>(std::move(ph), [f](const std::vector<std::string>& o) {
        const std::string& b = o.at(0);
        if (b != "0" && b != "1") throw Error("switch: decider output is not a bit");
        bool one = b == "1";
        return std::string((f == 1) == one ? "1" : "0");
      });
    }
    case K::Comparator: {
      std::vector<SeqStepper::Phase> ph(3);
      ph[0].inner = make_stepper(m->a, input);
      ph[1].inner = make_stepper(m->b, input);
      ph[2].count = 1;
      return std::make_unique<SeqStepper>(std::move(ph), [](const std::vector<std::string>& o) {
        auto norm = [](std::string s) {
          std::size_t i = 0;
          while (i + 1 < s.size() && s[i] == '0') ++i;
          return s.substr(i).empty() || s.substr(i) == "0" ? std::string("0") : s.substr(i);
        };
        return std::string(norm(o.at(0)) == norm(o.at(1)) ? "1" : "0");
      });
    }
    case K::TmoWrapper: {
      std::uint64_t n = string_num(input);
      std::uint64_t T = eval_T(n, *m->ev);
      return std::make_unique<CounterStepper>(n + 1, nat_to_bits(T));
    }
    case K::Goldbach: {
      if (input.size() > 1)
        return std::make_unique<CounterStepper>(input.size() + 1, "1");
      return std::make_unique<GoldbachStepper>();
    }
  }
  throw Error("make_stepper: bad machine kind");
}

inline RunOutcome run_bounded(const MachinePtr& m, const std::string& input, std::uint64_t budget) {
  StepperPtr st = make_stepper(m, input);
  while (!st->halted() && st->steps() < budget) st->step();
  RunOutcome r;
  r.steps_used = st->steps();
  if (st->halted()) {
    r.kind = RunOutcome::Kind::Halted;
    r.output = st->output();
  }
  return r;
}

// --- proof checking ----------------------------------------------------------

inline CheckResult check_proof(const Statement& s, const Proof& p) {
  auto reject = [](std::string why) { return CheckResult{false, std::move(why)}; };
  try {
    if (statement_ser(p.subject) != statement_ser(s)) return reject("subject-mismatch");
    switch (s.kind) {
      case Statement::Kind::Halts: {
        if (p.kind != Proof::Kind::HaltTrace) return reject("kind-mismatch");
        if (s.m1->kind != Machine::Kind::Raw) return reject("trace-requires-raw");
        const MachineDescription& d = s.m1->desc;
        if (p.trace.size() != p.halt_steps + 1) return reject("malformed");
        Configuration c = initial_config(d, s.w);
        auto same = [](const Configuration& a, const Configuration& b) {
          return a.state == b.state && a.head == b.head && a.tape == b.tape;
        };
        if (!same(c, p.trace[0])) return reject("trace-replay-mismatch");
        for (std::uint64_t i = 1; i <= p.halt_steps; ++i) {
          if (c.state == d.halt()) return reject("trace-not-canonical");
          step_once(d, c);
          if (!same(c, p.trace[i])) return reject("trace-replay-mismatch");
        }
        if (c.state != d.halt()) return reject("no-halt");
        return {true, ""};
      }
      case Statement::Kind::NotHalts: {
        if (p.kind != Proof::Kind::CycleCertificate) return reject("kind-mismatch");
        if (s.m1->kind != Machine::Kind::Raw) return reject("cycle-requires-raw");
        if (p.cycle < 1) return reject("malformed");
        std::uint64_t span = p.prefix + p.cycle;
        if (span > kCycleCap) return reject("cycle-cap-exceeded");
        StepperPtr st = make_stepper(s.m1, s.w);
        std::unordered_map<std::string, std::uint64_t> seen;
        for (std::uint64_t j = 0; j <= span; ++j) {
          if (st->halted()) return reject("halts-within-span");
          std::string snap = st->snapshot();
          auto it = seen.find(snap);
          if (it != seen.end()) {
            if (it->second == p.prefix && j == span) return {true, ""};
            return reject("cycle-not-canonical");
          }
          seen.emplace(std::move(snap), j);
          if (j < span) st->step();
        }
        return reject("cycle-mismatch");
      }
      case Statement::Kind::TimeBound: {
        if (p.kind != Proof::Kind::TimeBoundCertificate) return reject("kind-mismatch");
        auto d = derive_timebound(*s.m1);
        if (!d) return reject("no-derivation");
        if (derivation_ser(p.deriv) != derivation_ser(*d)) return reject("derivation-mismatch");
        if (!(s.bound == d->steps)) return reject("bound-mismatch");
        return {true, ""};
      }
      case Statement::Kind::PointwiseEqual: {
        if (p.kind != Proof::Kind::EqualityCertificate) return reject("kind-mismatch");
        if (s.tag != "dc") return reject("composer-tag-mismatch");
        if (s.m1->kind != Machine::Kind::DiagCompose) return reject("not-composition");
        if (!same_machine(s.m1->b, s.m2)) return reject("m2-mismatch");
        auto td = derive_totality(*s.m2);
        if (!td) return reject("no-totality-derivation");
        if (derivation_ser(p.deriv) != derivation_ser(*td)) return reject("derivation-mismatch");
        return {true, ""};
      }
    }
    return reject("malformed");
  } catch (const Error&) {
    return reject("malformed");
  }
}

inline std::optional<Proof> certify_halting(const MachinePtr& m, const std::string& w,
                                            std::uint64_t budget) {
  if (m->kind != Machine::Kind::Raw) return std::nullopt;
  const MachineDescription& d = m->desc;
  Configuration c = initial_config(d, w);
  std::vector<Configuration> trace{c};
  while (c.state != d.halt() && c.steps < budget) {
    step_once(d, c);
    trace.push_back(c);
  }
  if (c.state != d.halt()) return std::nullopt;
  Proof p;
  p.kind = Proof::Kind::HaltTrace;
  p.subject.kind = Statement::Kind::Halts;
  p.subject.m1 = m;
  p.subject.w = w;
  p.halt_steps = c.steps;
  p.trace = std::move(trace);
  return p;
}

inline std::optional<Proof> find_nonhalting_proof(const MachinePtr& m, const std::string& w,
                                                  std::uint64_t search_budget) {
  StepperPtr st = make_stepper(m, w);
  std::unordered_map<std::string, std::uint64_t> seen;
  std::uint64_t span_cap = std::min(search_budget, kCycleCap);
  for (std::uint64_t j = 0; j <= span_cap; ++j) {
    if (st->halted()) return std::nullopt;
    std::string snap = st->snapshot();
    auto it = seen.find(snap);
    if (it != seen.end()) {
      Proof p;
      p.kind = Proof::Kind::CycleCertificate;
      p.subject.kind = Statement::Kind::NotHalts;
      p.subject.m1 = m;
      p.subject.w = w;
      p.prefix = it->second;
      p.cycle = j - it->second;
      if (!check_proof(p.subject, p).accepted) return std::nullopt;  // e.g. composite machine
      return p;
    }
    seen.emplace(std::move(snap), j);
    if (j < span_cap) st->step();
  }
  return std::nullopt;
}

inline std::optional<Proof> certify_halting(const MachineDescription& d, const std::string& w,
                                            std::uint64_t budget) {
  return certify_halting(mk_raw(d), w, budget);
}

inline std::optional<Proof> find_nonhalting_proof(const MachineDescription& d, const std::string& w,
                                                  std::uint64_t budget) {
  return find_nonhalting_proof(mk_raw(d), w, budget);
}

// --- diagonal evaluator core ---------------------------------------------

// A quadruplet is admissible relative to m0 when p1 certifies a time bound
// for m1, p2 certifies that m1 is literally m0-compose-m2 with total m2, and
// the composition's outer machine is this evaluator's m0.
inline bool quadruplet_admissible(const Quadruplet& q, const Machine& m0,
                                  std::string* why = nullptr) {
  auto fail = [&](std::string r) {
    if (why) *why = std::move(r);
    return false;
  };
  if (q.p1.subject.kind != Statement::Kind::TimeBound || !same_machine(q.p1.subject.m1, q.m1))
    return fail("p1-subject-mismatch");
  CheckResult r1 = check_proof(q.p1.subject, q.p1);
  if (!r1.accepted) return fail("p1-" + r1.reason);
  if (q.p2.subject.kind != Statement::Kind::PointwiseEqual ||
      !same_machine(q.p2.subject.m1, q.m1) || !same_machine(q.p2.subject.m2, q.m2))
    return fail("p2-subject-mismatch");
  CheckResult r2 = check_proof(q.p2.subject, q.p2);
  if (!r2.accepted) return fail("p2-" + r2.reason);
  if (q.m1->kind != Machine::Kind::DiagCompose || !same_machine(*q.m1->a, m0))
    return fail("m0-mismatch");
  return true;
}

inline std::optional<Quadruplet> member_quadruplet(std::uint64_t n, const EvaluatorSpec& ev) {
  auto it = ev.seeds.find(n);
  if (it != ev.seeds.end())
    return quadruplet_admissible(it->second, *ev.m0) ? std::optional<Quadruplet>(it->second)
                                                     : std::nullopt;
  auto q = t_decode(n);
  if (q && quadruplet_admissible(*q, *ev.m0)) return q;
  return std::nullopt;
}

inline bool eval_membership(std::uint64_t n, const EvaluatorSpec& ev) {
  return member_quadruplet(n, ev).has_value();
}

// Runs the member's m2 on n under the budget its totality certificate
// justifies; exceeding it means the certificate calculus is unsound.
inline std::uint64_t member_value(std::uint64_t n, const Quadruplet& q) {
  auto tot = derive_totality(*q.m2);
  if (!tot) throw Error("evaluator: member without totality derivation at n=" + std::to_string(n));
  std::uint64_t budget = tot->steps.eval(n) + 1;
  RunOutcome r = run_bounded(q.m2, nat_to_bits(n), budget);
  if (!r.halted())
    throw Error("evaluator: certified totality violated at n=" + std::to_string(n));
  if (r.output.size() > 63) throw Error("evaluator: member value too large at n=" + std::to_string(n));
  return string_num(r.output);
}

inline std::uint64_t eval_T(std::uint64_t n, const EvaluatorSpec& ev) {
  if (n > 1000000) throw Error("evaluator: index too large for desk evaluation");
  std::uint64_t T = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::uint64_t next = T + 1;
    if (auto q = member_quadruplet(i, ev)) next = std::max(next, member_value(i, *q) + 1);
    T = next;
  }
  return T;
}

// Literal recursive form of the definition (test oracle).
inline std::uint64_t eval_T_recursive(std::uint64_t n, const EvaluatorSpec& ev) {
  if (n == 0) return 0;
  std::uint64_t prev = eval_T_recursive(n - 1, ev) + 1;
  if (auto q = member_quadruplet(n, ev)) return std::max(prev, member_value(n, *q) + 1);
  return prev;
}

inline int eval_f(std::uint64_t n, const EvaluatorSpec& ev) {
  std::uint64_t T = eval_T(n, ev);
  if (T > (std::uint64_t(1) << 20)) throw Error("evaluator: T value too large for f");
  RunOutcome r = run_bounded(ev.m0, zeros(T), safety_budget());
  if (!r.halted()) throw Error("evaluator: m0 exhausted the safety budget");
  return r.output == "1" ? 1 : 0;
}

}  // namespace indeplab
