#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "indeplab/encoding.hpp"
#include "indeplab/engine.hpp"

namespace indeplab {

// Both proofs must check against their own subjects before a quadruplet may
// be encoded (decoding stays purely syntactic).
inline bool quadruplet_wellformed(const Quadruplet& q, std::string* why = nullptr) {
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
  return true;
}

inline BigNat t_encode(const Quadruplet& q) {
  std::string why;
  if (!quadruplet_wellformed(q, &why))
    throw Error("encode: quadruplet carries an unverifiable proof (" + why + ")");
  return t_encode_unchecked(q);
}

// Assembles the canonical valid quadruplet for m1 = compose(m0, m2), with
// both certificates derived structurally. Throws when m2 is not certifiably
// total or m0 has no linear time bound.
inline Quadruplet make_quadruplet(const MachinePtr& m0, const MachinePtr& m2) {
  Quadruplet q;
  q.m2 = m2;
  q.m1 = mk_diag_compose(m0, m2);
  auto tb = derive_timebound(*q.m1);
  if (!tb) throw Error("quadruplet: no time-bound derivation for the composition");
  q.p1.kind = Proof::Kind::TimeBoundCertificate;
  q.p1.subject.kind = Statement::Kind::TimeBound;
  q.p1.subject.m1 = q.m1;
  q.p1.subject.bound = tb->steps;
  q.p1.deriv = *tb;
  auto tot = derive_totality(*m2);
  if (!tot) throw Error("quadruplet: no totality derivation for m2");
  q.p2.kind = Proof::Kind::EqualityCertificate;
  q.p2.subject.kind = Statement::Kind::PointwiseEqual;
  q.p2.subject.m1 = q.m1;
  q.p2.subject.m2 = m2;
  q.p2.subject.tag = "dc";
  q.p2.deriv = *tot;
  return q;
}

// Memoizing owner of T and membership values for one evaluator spec.
struct DiagonalEvaluator {
  EvaluatorSpecPtr spec;
  std::map<std::uint64_t, std::uint64_t> memo;        // n -> T(n)
  std::map<std::uint64_t, bool> membership_cache;

  explicit DiagonalEvaluator(EvaluatorSpecPtr s) : spec(std::move(s)) { memo[0] = 0; }

  bool member(std::uint64_t n) {
    auto it = membership_cache.find(n);
    if (it != membership_cache.end()) return it->second;
    bool b = eval_membership(n, *spec);
    membership_cache[n] = b;
    return b;
  }

  std::uint64_t T(std::uint64_t n) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::uint64_t hi = memo.rbegin()->first;
    std::uint64_t t = memo.rbegin()->second;
    if (n > 1000000) throw Error("evaluator: index too large for desk evaluation");
    for (std::uint64_t i = hi + 1; i <= n; ++i) {
      std::uint64_t next = t + 1;
      if (member(i)) {
        auto q = member_quadruplet(i, *spec);
        next = std::max(next, member_value(i, *q) + 1);
      }
      t = next;
      memo[i] = t;
    }
    return t;
  }

  int f(std::uint64_t n) {
    std::uint64_t t = T(n);
    if (t > (std::uint64_t(1) << 20)) throw Error("evaluator: T value too large for f");
    RunOutcome r = run_bounded(spec->m0, zeros(t), safety_budget());
    if (!r.halted()) throw Error("evaluator: m0 exhausted the safety budget");
    return r.output == "1" ? 1 : 0;
  }
};

inline DiagonalEvaluator make_evaluator(const MachinePtr& m0,
                                        std::map<std::uint64_t, Quadruplet> seeds = {}) {
  auto spec = std::make_shared<EvaluatorSpec>();
  spec->m0 = m0;
  spec->seeds = std::move(seeds);
  return DiagonalEvaluator(std::static_pointer_cast<const EvaluatorSpec>(spec));
}

inline bool h_membership(std::uint64_t n, DiagonalEvaluator& ev) { return ev.member(n); }
inline std::uint64_t t_m0_eval(std::uint64_t n, DiagonalEvaluator& ev) { return ev.T(n); }
inline int f_eval(std::uint64_t n, DiagonalEvaluator& ev) { return ev.f(n); }

// --- the self-reference barrier -------------------------------------------

struct SelfRefReport {
  bool admitted = false;          // must stay false; true is a soundness bug
  std::string failed_certificate; // machine-readable reason naming the bad part
  bool arithmetic_ok = false;     // 1 + T(n) > T(n) on the probed points
};

// Checks that a candidate quadruplet whose m2 wraps this evaluator's own
// growth function cannot enter the membership set, and probes the arithmetic
// contradiction acceptance would force (T(n) >= 1 + T(n)).
inline SelfRefReport reject_self_reference(const Quadruplet& candidate, DiagonalEvaluator& ev,
                                           std::uint64_t probe_n = 20) {
  SelfRefReport rep;
  rep.admitted = quadruplet_admissible(candidate, *ev.spec->m0, &rep.failed_certificate);
  if (rep.admitted)
    throw Error("soundness: a self-referential quadruplet was admitted to the membership set");
  rep.arithmetic_ok = true;
  for (std::uint64_t n = 0; n <= probe_n; ++n)
    if (!(1 + ev.T(n) > ev.T(n))) rep.arithmetic_ok = false;
  return rep;
}

// --- Theorem 2 machines ------------------------------------------------------

inline MachinePtr build_theorem2_switch(const MachinePtr& t_l0, const DiagonalEvaluator& ev) {
  return mk_switch(t_l0, ev.spec);
}

inline MachinePtr build_comparator(const MachinePtr& t_m, const MachinePtr& t_l0) {
  return mk_comparator(t_m, t_l0);
}

inline MachinePtr build_tmo_wrapper(const DiagonalEvaluator& ev) { return mk_tmo(ev.spec); }

// Dump format for regression diffing.
inline std::string dump_code_points(DiagonalEvaluator& ev, std::uint64_t lo, std::uint64_t hi) {
  std::ostringstream out;
  for (std::uint64_t n = lo; n <= hi; ++n)
    out << n << "\tmember:" << (ev.member(n) ? 1 : 0) << "\tT:" << ev.T(n) << "\tf:" << ev.f(n)
        << "\n";
  return out.str();
}

}  // namespace indeplab
