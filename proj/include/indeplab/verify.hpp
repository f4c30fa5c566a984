#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "indeplab/constructions.hpp"
#include "indeplab/diagonal.hpp"
#include "indeplab/indeplab.hpp"
#include "indeplab/profile.hpp"

namespace indeplab {

struct VerifyOptions {
  int max_len = 8;
  std::uint32_t seed = 12345;
  std::uint64_t budget = 100000;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::uint64_t checks = 0;
  std::string detail;  // empty when pass; first failures otherwise
};

namespace detail {

class Checker {
 public:
  std::uint64_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  CriterionResult finish(int id, std::string name) const {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.checks = checks;
    r.pass = failures.empty();
    if (!r.pass) {
      std::ostringstream d;
      d << failures.size() << " failed check(s): ";
      for (std::size_t i = 0; i < failures.size() && i < 3; ++i) {
        if (i) d << "; ";
        d << failures[i];
      }
      r.detail = d.str();
    }
    return r;
  }
};

struct CorpusPair {
  MachineDescription m;
  std::string w;
  std::optional<std::uint64_t> halt;  // exact halt step when halting
  std::string label;
};

// Ten (machine, input) pairs spanning never-halts and halts at 0/1/3/5/17.
inline std::vector<CorpusPair> threshold_corpus() {
  std::vector<CorpusPair> v;
  v.push_back({halt_only_machine(), "", 0, "halt-only/\"\""});
  v.push_back({halt_only_machine(), "101", 0, "halt-only/101"});
  v.push_back({self_loop_machine(), "", std::nullopt, "self-loop/\"\""});
  v.push_back({self_loop_machine(), "1011", std::nullopt, "self-loop/1011"});
  v.push_back({ping_pong_machine(), "", std::nullopt, "ping-pong/\"\""});
  v.push_back({step_counter_machine(1), "0", 1, "steps-1/0"});
  v.push_back({step_counter_machine(3), "", 3, "steps-3/\"\""});
  v.push_back({step_counter_machine(5), "11", 5, "steps-5/11"});
  v.push_back({step_counter_machine(17), "", 17, "steps-17/\"\""});
  v.push_back({move_right_machine(), "101", 5, "move-right/101"});
  return v;
}

inline LanguageView builtin_view(const std::string& tag) { return LanguageView{mk_builtin(tag)}; }

inline const std::vector<std::string>& decider_tags() {
  static const std::vector<std::string> t = {"c0", "c1", "par", "pop", "lenpar"};
  return t;
}

inline LanguageView random_patch_of(const LanguageView& base, int m, std::mt19937& rng) {
  std::map<std::string, bool> table;
  for (int n = 0; n < m; ++n)
    for (auto& s : strings_of_length(n)) table[s] = (rng() & 1) != 0;
  return patch_language(base, table, m);
}

}  // namespace detail

// Threshold-machine suite: outputs are length-determined and monotone, the
// threshold matches the exact halt step, and measured costs fit the emitted
// linear certificate up to length 64.
inline CriterionResult criterion1(const VerifyOptions& opt = {}) {
  detail::Checker ck;
  int L = std::min(opt.max_len, 8);
  for (auto& cp : detail::threshold_corpus()) {
    MachinePtr o = build_O(cp.m, cp.w);
    std::vector<int> per_len;
    for (int n = 0; n <= L; ++n) {
      std::set<std::string> outs;
      for (auto& s : strings_of_length(n)) {
        RunOutcome r = run_bounded(o, s, safety_budget());
        ck.expect(r.halted(), cp.label + ": O did not halt on " + s);
        outs.insert(r.output);
      }
      ck.expect(outs.size() == 1, cp.label + ": length " + std::to_string(n) +
                                      " outputs are not length-determined");
      std::string out = *outs.begin();
      ck.expect(out == "0" || out == "1", cp.label + ": non-bit O output");
      per_len.push_back(out == "1" ? 1 : 0);
      // expected bit straight from the definition
      int want = (cp.halt && *cp.halt <= std::uint64_t(n)) ? 0 : 1;
      ck.expect(per_len.back() == want, cp.label + ": wrong O value at length " + std::to_string(n));
    }
    for (int n = 1; n <= L; ++n)
      ck.expect(!(per_len[std::size_t(n)] == 1 && per_len[std::size_t(n) - 1] == 0),
                cp.label + ": monotonicity violated at length " + std::to_string(n));

    ThresholdProfile tp = threshold_profile(o, 20);
    if (cp.halt) {
      ck.expect(!tp.all_ones && tp.m == *cp.halt, cp.label + ": threshold does not match halt step");
      RunOutcome rr = run_bounded_raw(cp.m, cp.w, 10000);
      ck.expect(rr.halted() && rr.steps_used == *cp.halt, cp.label + ": halt-step oracle mismatch");
    } else {
      ck.expect(tp.all_ones, cp.label + ": expected all-ones profile");
      ck.expect(!run_bounded_raw(cp.m, cp.w, 10000).halted(), cp.label + ": unexpectedly halted");
    }

    auto pr = make_timebound_proof(o);
    ck.expect(pr.has_value(), cp.label + ": no time-bound certificate");
    if (pr) {
      ck.expect(check_proof(pr->subject, *pr).accepted, cp.label + ": certificate rejected");
      ck.expect(pr->subject.bound.k == 1, cp.label + ": certificate is not linear");
      for (int n = 0; n <= 64; ++n) {
        RunOutcome r = run_bounded(o, zeros(std::size_t(n)), safety_budget());
        ck.expect(r.halted() && r.steps_used <= pr->subject.bound.eval(std::uint64_t(n)),
                  cp.label + ": steps exceed certificate at length " + std::to_string(n));
      }
    }
  }
  return ck.finish(1, "threshold");
}

// Racer suite: exact-step accepts, enumeration-indexed rejects, and the
// fixed point staying unresolved in both directions.
inline CriterionResult criterion2(const VerifyOptions& opt = {}) {
  detail::Checker ck;
  for (auto& cp : detail::threshold_corpus()) {
    if (!cp.halt) continue;
    RacerVerdict v = race(cp.m, cp.w, 10000);
    ck.expect(v.kind == RacerVerdict::Kind::Accept && v.halt_step == *cp.halt,
              cp.label + ": race did not accept at the exact halt step");
    auto hp = certify_halting(cp.m, cp.w, v.halt_step);
    ck.expect(hp && check_proof(hp->subject, *hp).accepted,
              cp.label + ": accept without a checkable halting certificate");
  }
  // cycle-certified pairs within the enumeration horizon
  std::vector<std::pair<MachineDescription, std::string>> cyc = {
      {self_loop_machine(), ""}, {self_loop_machine(), "0"}, {self_loop_machine(), "11"}};
  for (auto& [m, w] : cyc) {
    std::string label = "cycle pair on \"" + w + "\"";
    RacerVerdict v = race(m, w, opt.budget);
    ck.expect(v.kind == RacerVerdict::Kind::Reject, label + ": race did not reject");
    RacerVerdict v2 = race(m, w, opt.budget);
    ck.expect(v.kind == v2.kind && v.proof_index == v2.proof_index && v.rounds == v2.rounds,
              label + ": race is not deterministic");
    if (v.kind == RacerVerdict::Kind::Reject) {
      auto [st, pr] = enumerate_theorems(v.proof_index);
      Statement want;
      want.kind = Statement::Kind::NotHalts;
      want.m1 = mk_raw(m);
      want.w = w;
      ck.expect(statement_ser(st) == statement_ser(want),
                label + ": rejected index does not carry the pair's statement");
      ck.expect(check_proof(st, pr).accepted, label + ": enumerated proof not accepted");
      // independent location of the index
      bool earlier = false;
      for (std::size_t k = 0; k < v.proof_index; ++k)
        if (statement_ser(enumerate_theorems(k).first) == statement_ser(want)) earlier = true;
      ck.expect(!earlier, label + ": an earlier enumeration index carries the statement");
    }
  }
  // cycle certificates exist for the never-halting corpus machines
  ck.expect(find_nonhalting_proof(self_loop_machine(), "", 100).has_value(),
            "self-loop: no cycle certificate found");
  ck.expect(find_nonhalting_proof(ping_pong_machine(), "", 100).has_value(),
            "ping-pong: no cycle certificate found");

  auto [mh, wh] = build_fixed_point();
  RacerVerdict fv = race(mh, wh, 100000);
  ck.expect(fv.kind == RacerVerdict::Kind::StillRunning,
            "fixed point: race resolved unexpectedly");
  ck.expect(!certify_halting(mh, wh, 100000).has_value(), "fixed point: halting certified");
  ck.expect(!find_nonhalting_proof(mh, wh, 100000).has_value(),
            "fixed point: non-halting certified");
  RacerVerdict fv2 = race(mh, wh, 100000);
  ck.expect(fv.kind == fv2.kind && fv.rounds == fv2.rounds, "fixed point: race not deterministic");
  return ck.finish(2, "racer");
}

// Patching and almost-equality suite.
inline CriterionResult criterion3(const VerifyOptions& opt = {}) {
  detail::Checker ck;
  std::mt19937 rng(opt.seed);
  int L = std::min(opt.max_len, 8);
  for (int it = 0; it < 100; ++it) {
    LanguageView base =
        detail::builtin_view(detail::decider_tags()[rng() % detail::decider_tags().size()]);
    int m = int(rng() % 5);
    std::map<std::string, bool> table;
    for (int n = 0; n < m; ++n)
      for (auto& s : strings_of_length(n)) table[s] = (rng() & 1) != 0;
    LanguageView patched = patch_language(base, table, m);
    std::string label = "patch #" + std::to_string(it);
    for (int n = 0; n <= L; ++n)
      for (auto& s : strings_of_length(n)) {
        bool got = lang_member(patched, s);
        bool want = n < m ? table.at(s) : lang_member(base, s);
        ck.expect(got == want, label + ": wrong verdict on \"" + s + "\"");
      }
    AlmostEqualVerdict ae = almost_equal(patched, base, L);
    ck.expect(!ae.divergent && ae.m <= std::uint64_t(m),
              label + ": almost-equal verdict above the patch threshold");
    auto base_pr = make_timebound_proof(base.decider);
    auto pr = make_timebound_proof(patched.decider);
    ck.expect(base_pr && pr && pr->subject.bound.a == base_pr->subject.bound.a &&
                  pr->subject.bound.k == base_pr->subject.bound.k &&
                  pr->subject.bound.b == base_pr->subject.bound.b + 2,
              label + ": certificate is not base plus a constant");
  }
  // equivalence-relation probes over random triples sharing a base
  for (int it = 0; it < 50; ++it) {
    LanguageView base =
        detail::builtin_view(detail::decider_tags()[rng() % detail::decider_tags().size()]);
    LanguageView a = detail::random_patch_of(base, int(rng() % 4), rng);
    LanguageView b = detail::random_patch_of(base, int(rng() % 4), rng);
    LanguageView c = detail::random_patch_of(base, int(rng() % 4), rng);
    std::string label = "triple #" + std::to_string(it);
    ck.expect(!almost_equal(a, a, L).divergent && almost_equal(a, a, L).m == 0,
              label + ": not reflexive");
    AlmostEqualVerdict ab = almost_equal(a, b, L), ba = almost_equal(b, a, L);
    ck.expect(ab.divergent == ba.divergent && ab.m == ba.m, label + ": not symmetric");
    AlmostEqualVerdict bc = almost_equal(b, c, L), ac = almost_equal(a, c, L);
    ck.expect(!ab.divergent && !bc.divergent && !ac.divergent, label + ": not transitive");
  }
  AlmostEqualVerdict div = almost_equal(detail::builtin_view("c1"), detail::builtin_view("c0"), L);
  ck.expect(div.divergent, "constant languages: expected divergent");
  return ck.finish(3, "patching");
}

// Switch-composition suite: Q against the hand-composed rule, and the
// almost-equality of the composed language with a concrete threshold.
inline CriterionResult criterion4(const VerifyOptions& opt = {}) {
  detail::Checker ck;
  int L = std::min(opt.max_len, 8);
  auto [mh, wh] = build_fixed_point();
  for (auto& tag : detail::decider_tags()) {
    MachinePtr m1 = mk_builtin(tag);
    MachinePtr q = build_Q(mh, m1, wh);
    for (int n = 0; n <= L; ++n)
      for (auto& s : strings_of_length(n)) {
        // hand rule: the threshold part first, then the decider
        bool halted_within = run_bounded(mh, wh, std::uint64_t(n)).halted();
        std::string want =
            halted_within ? run_bounded(m1, s, safety_budget()).output : std::string("1");
        RunOutcome r = run_bounded(q, s, safety_budget());
        ck.expect(r.halted() && r.output == want,
                  "Q(fixed-point, " + tag + "): mismatch on \"" + s + "\"");
      }
  }
  MachineDescription step5 = step_counter_machine(5);
  for (auto& tag : detail::decider_tags()) {
    MachinePtr m1 = mk_builtin(tag);
    MachinePtr q = build_Q(mk_raw(step5), m1, "");
    for (int n = 0; n <= L; ++n)
      for (auto& s : strings_of_length(n)) {
        std::string want = n < 5 ? "1" : run_bounded(m1, s, safety_budget()).output;
        RunOutcome r = run_bounded(q, s, safety_budget());
        ck.expect(r.halted() && r.output == want,
                  "Q(step-5, " + tag + "): mismatch on \"" + s + "\"");
      }
    AlmostEqualVerdict ae = almost_equal(LanguageView{q}, LanguageView{m1}, L);
    ck.expect(!ae.divergent && ae.m <= 5, "Q(step-5, " + tag + "): not almost-equal at threshold 5");
    for (int n = 5; n <= L; ++n)
      for (auto& s : strings_of_length(n))
        ck.expect(lang_member(LanguageView{q}, s) == lang_member(LanguageView{m1}, s),
                  "Q(step-5, " + tag + "): disagreement at or above the threshold");
  }
  return ck.finish(4, "composition");
}

// Growth-function suite: strict monotonicity, the no-code identity, seeded
// jumps by the max rule, and memoized-vs-recursive agreement.
inline CriterionResult criterion5(const VerifyOptions& = {}) {
  detail::Checker ck;
  MachinePtr m0 = build_O(self_loop_machine(), "");
  DiagonalEvaluator nocode = make_evaluator(m0);
  for (std::uint64_t n = 0; n <= 200; ++n) {
    ck.expect(nocode.T(n) == n, "no-code evaluator: T(n) != n at n=" + std::to_string(n));
    if (n > 0)
      ck.expect(nocode.T(n - 1) < nocode.T(n), "no-code evaluator: not strictly increasing");
    ck.expect(!nocode.member(n), "no-code evaluator: spurious member at n=" + std::to_string(n));
  }
  std::map<std::uint64_t, Quadruplet> seeds;
  seeds.emplace(10, make_quadruplet(m0, mk_const_nat(50)));
  seeds.emplace(60, make_quadruplet(m0, mk_builtin("dbl")));
  seeds.emplace(150, make_quadruplet(m0, mk_const_nat(100)));
  DiagonalEvaluator seeded = make_evaluator(m0, seeds);
  auto spec = seeded.spec;
  for (std::uint64_t n = 0; n <= 200; ++n) {
    std::uint64_t memoized = seeded.T(n);
    ck.expect(memoized == eval_T_recursive(n, *spec),
              "seeded evaluator: memoized vs recursive mismatch at n=" + std::to_string(n));
    ck.expect(memoized == eval_T(n, *spec),
              "seeded evaluator: memoized vs iterative mismatch at n=" + std::to_string(n));
    if (n > 0)
      ck.expect(seeded.T(n - 1) < memoized, "seeded evaluator: not strictly increasing");
  }
  // the max rule, worked by hand: T(9)=9 -> T(10)=max(10,51)=51;
  // T(59)=100 -> T(60)=max(101,121)=121; T(149)=210 -> T(150)=211 (100+1 loses)
  ck.expect(seeded.member(10) && seeded.member(60) && seeded.member(150),
            "seeded evaluator: seed membership missing");
  ck.expect(seeded.T(10) == 51, "seeded evaluator: wrong jump at 10");
  ck.expect(seeded.T(60) == 121, "seeded evaluator: wrong jump at 60");
  ck.expect(seeded.T(150) == 211, "seeded evaluator: max rule failed at 150");
  return ck.finish(5, "growth");
}

// Self-reference barrier: five forged quadruplets naming this evaluator's own
// growth wrapper are all rejected with a named certificate, and the
// arithmetic contradiction probe holds.
inline CriterionResult criterion6(const VerifyOptions& = {}) {
  detail::Checker ck;
  MachinePtr m0 = build_O(self_loop_machine(), "");
  DiagonalEvaluator ev = make_evaluator(m0);
  MachinePtr wrapper = build_tmo_wrapper(ev);
  Quadruplet valid = make_quadruplet(m0, mk_builtin("id"));

  auto forged_subject = [&](const MachinePtr& m1) {
    Statement s;
    s.kind = Statement::Kind::TimeBound;
    s.m1 = m1;
    s.bound = Poly{1, 1, 1};
    return s;
  };

  std::vector<std::pair<Quadruplet, std::string>> variants;
  {  // fabricated p1: no derivation exists for a composition over the wrapper
    Quadruplet q;
    q.m2 = wrapper;
    q.m1 = mk_diag_compose(m0, wrapper);
    q.p1.kind = Proof::Kind::TimeBoundCertificate;
    q.p1.subject = forged_subject(q.m1);
    q.p1.deriv = Derivation{"dc", Poly{1, 1, 1}, false, {}, {}};
    q.p2 = valid.p2;
    variants.emplace_back(q, "p1-no-derivation");
  }
  {  // p1 stolen from a valid quadruplet
    Quadruplet q;
    q.m2 = wrapper;
    q.m1 = mk_diag_compose(m0, wrapper);
    q.p1 = valid.p1;
    q.p2 = valid.p2;
    variants.emplace_back(q, "p1-subject-mismatch");
  }
  {  // p2 stolen: subject names the valid m2, not the wrapper
    Quadruplet q = valid;
    q.m2 = wrapper;
    variants.emplace_back(q, "p2-subject-mismatch");
  }
  {  // p2 rewritten to claim the wrapper, but m1 still composes something else
    Quadruplet q = valid;
    q.m2 = wrapper;
    q.p2.subject.m2 = wrapper;
    variants.emplace_back(q, "p2-m2-mismatch");
  }
  {  // p2 rewritten with a non-composition tag
    Quadruplet q = valid;
    q.m2 = wrapper;
    q.p2.subject.m2 = wrapper;
    q.p2.subject.tag = "O";
    variants.emplace_back(q, "p2-composer-tag-mismatch");
  }

  int vi = 0;
  for (auto& [cand, want_reason] : variants) {
    std::string label = "forgery #" + std::to_string(vi++);
    SelfRefReport rep = reject_self_reference(cand, ev);
    ck.expect(!rep.admitted, label + ": admitted");
    ck.expect(!rep.failed_certificate.empty(), label + ": no named certificate");
    ck.expect(rep.failed_certificate == want_reason,
              label + ": reason \"" + rep.failed_certificate + "\" != \"" + want_reason + "\"");
    ck.expect(rep.arithmetic_ok, label + ": arithmetic probe failed");
    DiagonalEvaluator forged = make_evaluator(m0, {{7, cand}});
    ck.expect(!h_membership(7, forged), label + ": forged seed entered the membership set");
  }
  return ck.finish(6, "diagonal-barrier");
}

// Switch/comparator suite with a threshold-5 switch function.
inline CriterionResult criterion7(const VerifyOptions& = {}) {
  detail::Checker ck;
  MachinePtr m0 = build_O(step_counter_machine(5), "");
  DiagonalEvaluator ev = make_evaluator(m0);
  // f(n) = m0 on zeros(T(n)) = zeros(n): 1 exactly while n < 5
  for (std::uint64_t n = 0; n <= 200; ++n) {
    int f = ev.f(n);
    ck.expect(f == (n < 5 ? 1 : 0), "f: wrong value at n=" + std::to_string(n));
  }
  for (auto& tag : std::vector<std::string>{"par", "pop", "lenpar"}) {
    MachinePtr tl0 = mk_builtin(tag);
    MachinePtr u = build_theorem2_switch(tl0, ev);
    MachinePtr cmp = build_comparator(u, tl0);
    for (std::uint64_t n = 0; n <= 200; ++n) {
      std::string in = nat_to_bits(n);
      std::string tv = run_bounded(tl0, in, safety_budget()).output;
      RunOutcome ur = run_bounded(u, in, safety_budget());
      int f = ev.f(n);
      ck.expect(ur.halted(), tag + ": switch did not halt at n=" + std::to_string(n));
      ck.expect((ur.output == tv) == (f == 1),
                tag + ": U(n)=T_L0(n) iff f(n)=1 failed at n=" + std::to_string(n));
      std::string want = f == 1 ? tv : (tv == "1" ? "0" : "1");
      ck.expect(ur.output == want, tag + ": switch value wrong at n=" + std::to_string(n));
      RunOutcome cr = run_bounded(cmp, in, safety_budget());
      ck.expect(cr.halted() && cr.output == (f == 1 ? "1" : "0"),
                tag + ": comparator != f at n=" + std::to_string(n));
    }
  }
  return ck.finish(7, "switch");
}

// Encoding round-trips and non-code behavior.
inline CriterionResult criterion8(const VerifyOptions& opt = {}) {
  detail::Checker ck;
  std::mt19937 rng(opt.seed + 1);
  std::vector<MachinePtr> m0s;
  for (auto& w : std::vector<std::string>{"", "0", "1", "01", "111"}) {
    m0s.push_back(build_O(self_loop_machine(), w));
    m0s.push_back(build_O(step_counter_machine(int(rng() % 7)), w));
  }
  auto random_m2 = [&](auto&& self, int depth) -> MachinePtr {
    switch (rng() % (depth > 0 ? 9 : 8)) {
      case 0: return mk_builtin("id");
      case 1: return mk_builtin("dbl");
      case 2: return mk_builtin("len");
      case 3: return mk_builtin("c0");
      case 4: return mk_builtin("par");
      case 5: return mk_builtin("pop");
      case 6: return mk_builtin("lenpar");
      case 7: return mk_const_nat(rng());
      default: return mk_diag_compose(m0s[rng() % m0s.size()], self(self, depth - 1));
    }
  };
  std::set<std::string> sers;
  std::set<BigNat> codes;
  for (int it = 0; it < 500; ++it) {
    Quadruplet q = make_quadruplet(m0s[rng() % m0s.size()], random_m2(random_m2, 1));
    std::string label = "quadruplet #" + std::to_string(it);
    BigNat code = t_encode(q);
    ck.expect(code >= 1, label + ": code below 1");
    auto back = t_decode(code);
    ck.expect(back.has_value() && quadruplet_ser(*back) == quadruplet_ser(q),
              label + ": round-trip mismatch");
    sers.insert(quadruplet_ser(q));
    codes.insert(code);
  }
  ck.expect(sers.size() == codes.size(), "injectivity: distinct quadruplets collided");
  ck.expect(!t_decode(BigNat(0)).has_value(), "0 decoded to a quadruplet");
  ck.expect(!t_decode(BigNat(7)).has_value(), "7 decoded to a quadruplet");
  for (int it = 0; it < 500; ++it) {
    std::uint64_t n = rng() % 1000000;
    auto q = t_decode(n);
    if (q)
      ck.expect(t_encode_unchecked(*q) == BigNat(n),
                "re-encoding changed the small code " + std::to_string(n));
    else
      ck.expect(true, "");
  }
  return ck.finish(8, "encoding");
}

// Soundness of the first 1000 enumerated theorems.
inline CriterionResult criterion9(const VerifyOptions& = {}) {
  detail::Checker ck;
  std::set<std::string> halts_pairs, nothalts_pairs;
  std::set<std::string> pair_sers;
  std::string prev;
  for (std::size_t k = 0; k < 1000; ++k) {
    auto [st, pr] = enumerate_theorems(k);
    std::string label = "theorem #" + std::to_string(k);
    ck.expect(check_proof(st, pr).accepted, label + ": pair not accepted by the checker");
    std::string ser = proof_ser(pr);
    ck.expect(pair_sers.insert(ser).second, label + ": duplicate pair");
    ck.expect(prev.size() < ser.size() || (prev.size() == ser.size() && prev < ser),
              label + ": enumeration order violated");
    prev = ser;
    std::string key = machine_ser(st.m1) + "|" + st.w;
    if (st.kind == Statement::Kind::Halts) {
      halts_pairs.insert(key);
      RunOutcome r = run_bounded(st.m1, st.w, pr.halt_steps);
      ck.expect(r.halted() && r.steps_used == pr.halt_steps,
                label + ": machine does not halt at the certified step");
    } else if (st.kind == Statement::Kind::NotHalts) {
      nothalts_pairs.insert(key);
      std::uint64_t span = pr.prefix + pr.cycle;
      RunOutcome r = run_bounded(st.m1, st.w, 10 * span);
      ck.expect(!r.halted(), label + ": cycle-certified machine halted");
    }
  }
  for (auto& k : halts_pairs)
    ck.expect(!nothalts_pairs.count(k), "exclusivity violated for " + k);
  return ck.finish(9, "soundness");
}

inline CriterionResult run_criterion(int id, const VerifyOptions& opt = {}) {
  try {
    switch (id) {
      case 1: return criterion1(opt);
      case 2: return criterion2(opt);
      case 3: return criterion3(opt);
      case 4: return criterion4(opt);
      case 5: return criterion5(opt);
      case 6: return criterion6(opt);
      case 7: return criterion7(opt);
      case 8: return criterion8(opt);
      case 9: return criterion9(opt);
    }
  } catch (const Error& e) {
    CriterionResult r;
    r.id = id;
    r.name = "criterion-" + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
    return r;
  }
  throw Error("unknown criterion id " + std::to_string(id));
}

// Suite names (with conventional aliases) for the verify front door.
inline std::optional<int> suite_criterion(const std::string& name) {
  static const std::map<std::string, int> names = {
      {"threshold", 1}, {"lemma2", 1},    {"racer", 2},     {"lemma1", 2},
      {"patching", 3},  {"lemma4", 3},    {"composition", 4}, {"theorem1", 4},
      {"growth", 5},    {"diagonal-barrier", 6}, {"lemma-item8", 6},
      {"switch", 7},    {"theorem2", 7},  {"encoding", 8},  {"soundness", 9},
      {"corollary1", 9}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

}  // namespace indeplab
