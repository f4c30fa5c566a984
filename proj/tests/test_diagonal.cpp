#include <catch_amalgamated.hpp>

#include "indeplab/constructions.hpp"
#include "indeplab/diagonal.hpp"
#include "indeplab/indeplab.hpp"

using namespace indeplab;

namespace {
MachinePtr all_ones_m0() { return build_O(self_loop_machine(), ""); }
}  // namespace

TEST_CASE("quadruplet codes round-trip and reject junk") {
  Quadruplet q = make_quadruplet(all_ones_m0(), mk_builtin("id"));
  BigNat code = t_encode(q);
  auto back = t_decode(code);
  REQUIRE(back);
  CHECK(quadruplet_ser(*back) == quadruplet_ser(q));

  CHECK_FALSE(t_decode(BigNat(0)).has_value());
  CHECK_FALSE(t_decode(BigNat(7)).has_value());
  CHECK_FALSE(t_decode(std::uint64_t(123456)).has_value());
}

TEST_CASE("encoding refuses quadruplets whose proofs do not check") {
  Quadruplet q = make_quadruplet(all_ones_m0(), mk_builtin("id"));
  q.p1.subject.bound.b += 1;
  CHECK_THROWS_WITH(t_encode(q), Catch::Matchers::ContainsSubstring("unverifiable proof"));
}

TEST_CASE("quadruplets cannot be built over uncertifiable second machines") {
  CHECK_THROWS(make_quadruplet(all_ones_m0(), mk_raw(move_right_machine())));
  CHECK_THROWS(make_quadruplet(all_ones_m0(), mk_builtin("exp")));
  CHECK_THROWS(make_quadruplet(mk_raw(self_loop_machine()), mk_builtin("id")));
}

TEST_CASE("the no-code evaluator grows by exactly one per step") {
  DiagonalEvaluator ev = make_evaluator(all_ones_m0());
  for (std::uint64_t n = 0; n <= 100; ++n) {
    CHECK(ev.T(n) == n);
    CHECK_FALSE(ev.member(n));
  }
  CHECK(ev.f(0) == 1);
  CHECK(ev.f(100) == 1);
}

TEST_CASE("seeded members trigger the max rule exactly once each") {
  std::map<std::uint64_t, Quadruplet> seeds;
  seeds.emplace(10, make_quadruplet(all_ones_m0(), mk_const_nat(50)));
  seeds.emplace(60, make_quadruplet(all_ones_m0(), mk_builtin("dbl")));
  seeds.emplace(150, make_quadruplet(all_ones_m0(), mk_const_nat(100)));
  DiagonalEvaluator ev = make_evaluator(all_ones_m0(), seeds);
  CHECK(ev.T(9) == 9);
  CHECK(ev.T(10) == 51);   // max(9+1+1, 50+1)
  CHECK(ev.T(59) == 100);
  CHECK(ev.T(60) == 121);  // max(101, 2*60+1)
  CHECK(ev.T(149) == 210);
  CHECK(ev.T(150) == 211); // the seeded value 100+1 loses to the running count
  for (std::uint64_t n = 1; n <= 200; ++n) {
    CHECK(ev.T(n - 1) < ev.T(n));
    CHECK(ev.T(n) == eval_T_recursive(n, *ev.spec));
  }
}

TEST_CASE("the switch function is always a bit and flips with the threshold") {
  DiagonalEvaluator ev = make_evaluator(build_O(step_counter_machine(5), ""));
  for (std::uint64_t n = 0; n <= 50; ++n) {
    int f = ev.f(n);
    CHECK((f == 0 || f == 1));
    CHECK(f == (n < 5 ? 1 : 0));
  }
}

TEST_CASE("self-referential quadruplets are refused with a named certificate") {
  DiagonalEvaluator ev = make_evaluator(all_ones_m0());
  MachinePtr wrapper = build_tmo_wrapper(ev);
  Quadruplet cand;
  cand.m2 = wrapper;
  cand.m1 = mk_diag_compose(all_ones_m0(), wrapper);
  cand.p1.kind = Proof::Kind::TimeBoundCertificate;
  cand.p1.subject.kind = Statement::Kind::TimeBound;
  cand.p1.subject.m1 = cand.m1;
  cand.p1.subject.bound = Poly{1, 1, 1};
  cand.p1.deriv = Derivation{"dc", Poly{1, 1, 1}, false, {}, {}};
  cand.p2 = cand.p1;
  SelfRefReport rep = reject_self_reference(cand, ev);
  CHECK_FALSE(rep.admitted);
  CHECK(rep.failed_certificate == "p1-no-derivation");
  CHECK(rep.arithmetic_ok);
  CHECK_THROWS(t_encode(cand));
}

TEST_CASE("the growth wrapper itself runs but carries no certificates") {
  DiagonalEvaluator ev = make_evaluator(all_ones_m0());
  MachinePtr wrapper = build_tmo_wrapper(ev);
  RunOutcome r = run_bounded(wrapper, "101", 1000);
  REQUIRE(r.halted());
  CHECK(r.output == nat_to_bits(5));  // T(5) = 5 for the no-code evaluator
  CHECK_FALSE(derive_totality(*wrapper).has_value());
  CHECK_FALSE(derive_timebound(*wrapper).has_value());
}

TEST_CASE("code-point dumps are stable") {
  DiagonalEvaluator ev = make_evaluator(all_ones_m0());
  CHECK(dump_code_points(ev, 0, 2) ==
        "0\tmember:0\tT:0\tf:1\n1\tmember:0\tT:1\tf:1\n2\tmember:0\tT:2\tf:1\n");
}

TEST_CASE("comparator agrees with the switch function pointwise") {
  DiagonalEvaluator ev = make_evaluator(build_O(step_counter_machine(5), ""));
  MachinePtr u = build_theorem2_switch(mk_builtin("pop"), ev);
  MachinePtr cmp = build_comparator(u, mk_builtin("pop"));
  for (std::uint64_t n = 0; n <= 40; ++n) {
    RunOutcome r = run_bounded(cmp, nat_to_bits(n), safety_budget());
    REQUIRE(r.halted());
    CHECK(r.output == (ev.f(n) == 1 ? "1" : "0"));
  }
}
