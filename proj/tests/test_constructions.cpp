#include <catch_amalgamated.hpp>

#include "indeplab/constructions.hpp"
#include "indeplab/indeplab.hpp"

using namespace indeplab;

TEST_CASE("threshold machine implements the n-step rule with cost at most 2n+1") {
  struct Case {
    MachineDescription m;
    std::string w;
  };
  for (auto& c : {Case{step_counter_machine(3), ""}, Case{self_loop_machine(), "10"},
                  Case{halt_only_machine(), "1"}}) {
    MachinePtr o = build_O(c.m, c.w);
    for (auto& s : strings_up_to(6)) {
      RunOutcome inner = run_bounded_raw(c.m, c.w, s.size());
      std::string want = inner.halted() ? "0" : "1";
      RunOutcome r = run_bounded(o, s, 1000);
      REQUIRE(r.halted());
      CHECK(r.output == want);
      CHECK(r.steps_used <= 2 * s.size() + 1);
    }
  }
}

TEST_CASE("threshold profile finds the exact halt step") {
  ThresholdProfile tp = threshold_profile(build_O(step_counter_machine(17), ""), 20);
  CHECK_FALSE(tp.all_ones);
  CHECK(tp.m == 17);
  CHECK(threshold_profile(build_O(ping_pong_machine(), ""), 20).all_ones);
  CHECK_THROWS(threshold_profile(mk_builtin("c1"), 8));  // not a threshold machine
}

TEST_CASE("racer accepts a halting pair at its exact halt step") {
  RacerVerdict v = race(step_counter_machine(5), "11", 10000);
  REQUIRE(v.kind == RacerVerdict::Kind::Accept);
  CHECK(v.halt_step == 5);
}

TEST_CASE("racer rejects the self-loop via the enumerated non-halting theorem") {
  RacerVerdict v = race(self_loop_machine(), "", 200000);
  REQUIRE(v.kind == RacerVerdict::Kind::Reject);
  CHECK(v.proof_index == 157);  // frozen regression value
  auto [st, pr] = enumerate_theorems(v.proof_index);
  CHECK(statement_ser(st) == "(n (tm 2 000S01L0_S) #)");
  CHECK(check_proof(st, pr).accepted);
}

TEST_CASE("the fixed point embeds its own description faithfully") {
  auto [mh, wh] = build_fixed_point();
  CHECK(wh == "");
  MachinePtr reparsed = machine_from_sexpr(sexpr_parse(machine_ser(mh)));
  CHECK(fixed_point_target(mh) == fixed_point_target(reparsed));
}

TEST_CASE("the fixed point outlives a large racing budget in both directions") {
  auto [mh, wh] = build_fixed_point();
  RacerVerdict v = race(mh, wh, 50000);
  CHECK(v.kind == RacerVerdict::Kind::StillRunning);
  CHECK_FALSE(certify_halting(mh, wh, 50000).has_value());
  CHECK_FALSE(find_nonhalting_proof(mh, wh, 50000).has_value());
}

TEST_CASE("switch composition forwards to the second machine past the threshold") {
  MachinePtr q = build_Q(mk_raw(step_counter_machine(2)), mk_builtin("par"), "");
  for (auto& s : strings_up_to(6)) {
    RunOutcome r = run_bounded(q, s, 1000);
    REQUIRE(r.halted());
    std::string want =
        s.size() < 2 ? "1" : run_bounded(mk_builtin("par"), s, 1000).output;
    CHECK(r.output == want);
  }
  auto pr = make_timebound_proof(q);
  REQUIRE(pr);
  CHECK(check_proof(pr->subject, *pr).accepted);
}

TEST_CASE("patching overrides exactly the strings below the threshold") {
  LanguageView base{mk_builtin("par")};
  std::map<std::string, bool> table = {{"", true}, {"0", true}, {"1", false}};
  LanguageView patched = patch_language(base, table, 2);
  CHECK(lang_member(patched, ""));
  CHECK(lang_member(patched, "0"));
  CHECK_FALSE(lang_member(patched, "1"));
  for (auto& s : strings_of_length(3)) CHECK(lang_member(patched, s) == lang_member(base, s));

  CHECK_THROWS_WITH(patch_language(base, {{"", true}}, 2),
                    Catch::Matchers::ContainsSubstring("missing entry"));
  std::map<std::string, bool> too_long = {{"", true}, {"0", true}, {"1", false}, {"00", true}};
  CHECK_THROWS_WITH(patch_language(base, too_long, 2),
                    Catch::Matchers::ContainsSubstring("length >= m"));
}

TEST_CASE("almost-equality distinguishes finite patches from divergence") {
  LanguageView par{mk_builtin("par")};
  AlmostEqualVerdict self = almost_equal(par, par, 8);
  CHECK_FALSE(self.divergent);
  CHECK(self.m == 0);

  std::map<std::string, bool> table = {{"", true}, {"0", false}, {"1", true}};
  AlmostEqualVerdict patched = almost_equal(patch_language(par, table, 2), par, 8);
  CHECK_FALSE(patched.divergent);
  CHECK(patched.m <= 2);

  CHECK(almost_equal(LanguageView{mk_builtin("c0")}, LanguageView{mk_builtin("c1")}, 8).divergent);
}

TEST_CASE("conjecture demo halts fast on long inputs and hunts on short ones") {
  MachinePtr g = build_goldbach_demo();
  RunOutcome r = run_bounded(g, "11", 100);
  REQUIRE(r.halted());
  CHECK(r.steps_used == 3);
  CHECK(r.output == "1");
  CHECK_FALSE(run_bounded(g, "", 100000).halted());
  CHECK_FALSE(run_bounded(g, "1", 100000).halted());
}
