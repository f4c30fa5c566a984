#include <catch_amalgamated.hpp>

#include "indeplab/indeplab.hpp"
#include "indeplab/profile.hpp"

using namespace indeplab;

TEST_CASE("halt-only machine halts immediately with the input as output") {
  MachineDescription m = halt_only_machine();
  for (auto& s : strings_up_to(4)) {
    RunOutcome r = run_bounded_raw(m, s, 100);
    REQUIRE(r.halted());
    CHECK(r.steps_used == 0);
    CHECK(r.output == s);
  }
}

TEST_CASE("move-right machine halts after n+2 steps") {
  MachineDescription m = move_right_machine();
  for (auto& s : strings_up_to(6)) {
    RunOutcome r = run_bounded_raw(m, s, 100);
    REQUIRE(r.halted());
    CHECK(r.steps_used == s.size() + 2);  // left-end hop plus n cells plus blank
    CHECK(r.output == s);
  }
}

TEST_CASE("step-counter machines halt at the advertised step on every input") {
  for (int k : {1, 3, 5, 17}) {
    MachineDescription m = step_counter_machine(k);
    for (auto& s : strings_up_to(3)) {
      RunOutcome r = run_bounded_raw(m, s, 100);
      REQUIRE(r.halted());
      CHECK(r.steps_used == std::uint64_t(k));
    }
  }
}

TEST_CASE("self-loop and ping-pong machines exhaust any budget") {
  CHECK(!run_bounded_raw(self_loop_machine(), "", 1000).halted());
  CHECK(!run_bounded_raw(self_loop_machine(), "1011", 1000).halted());
  CHECK(!run_bounded_raw(ping_pong_machine(), "", 1000).halted());
}

TEST_CASE("validator rejects a second halt-shaped state") {
  // two states, both shaped like the halt state
  std::string text =
      "machine dup\nstart a\nhalt h\n"
      "a > -> a > R\na 0 -> a 0 S\na 1 -> a 1 S\na _ -> a _ S\n"
      "h > -> h > R\nh 0 -> h 0 S\nh 1 -> h 1 S\nh _ -> h _ S\n";
  CHECK_THROWS_WITH(parse_machine_file(text), Catch::Matchers::ContainsSubstring("duplicate halt-like"));
}

TEST_CASE("validator rejects left-end violations and partial tables") {
  std::string bad_leftend =
      "machine b\nstart a\nhalt h\n"
      "a > -> a > S\na 0 -> h 0 S\na 1 -> h 1 S\na _ -> h _ S\n"
      "h > -> h > R\nh 0 -> h 0 S\nh 1 -> h 1 S\nh _ -> h _ S\n";
  CHECK_THROWS_WITH(parse_machine_file(bad_leftend), Catch::Matchers::ContainsSubstring("left-end"));
  std::string partial =
      "machine p\nstart a\nhalt h\n"
      "a > -> a > R\na 0 -> h 0 S\n"
      "h > -> h > R\nh 0 -> h 0 S\nh 1 -> h 1 S\nh _ -> h _ S\n";
  CHECK_THROWS_WITH(parse_machine_file(partial), Catch::Matchers::ContainsSubstring("non-total delta"));
}

TEST_CASE("machine file format round-trips through parse and print") {
  for (auto& m : {halt_only_machine(), self_loop_machine(), ping_pong_machine(),
                  move_right_machine(), step_counter_machine(7)}) {
    MachineDescription back = parse_machine_file(machine_file_print(m));
    CHECK(machine_ser(mk_raw(back)) == machine_ser(mk_raw(m)));
  }
}

TEST_CASE("canonical serialization is stable") {
  CHECK(machine_ser(mk_raw(halt_only_machine())) == "(tm 1)");
  CHECK(machine_ser(mk_raw(self_loop_machine())) == "(tm 2 000S01L0_S)");
}

TEST_CASE("profile reports exact per-length maxima with witnesses") {
  auto prof = time_complexity_profile(move_right_machine(), 5);
  REQUIRE(prof.size() == 6);
  for (std::size_t n = 0; n < prof.size(); ++n) {
    CHECK(prof[n].length == int(n));
    CHECK(prof[n].max_steps == n + 2);
    CHECK(prof[n].witness.size() == n);
  }
}

TEST_CASE("profile aborts with the offending input when the budget is exhausted") {
  CHECK_THROWS_WITH(time_complexity_profile(self_loop_machine(), 2),
                    Catch::Matchers::ContainsSubstring("budget"));
}

TEST_CASE("trace output replays the simulation line by line") {
  std::string t = trace_run(move_right_machine(), "11", 100);
  CHECK_THAT(t, Catch::Matchers::ContainsSubstring("step 1: state=0 head=0 read=> write=> move=R"));
  CHECK_THAT(t, Catch::Matchers::ContainsSubstring("Halted, steps 4, output \"11\""));
  std::string u = trace_run(self_loop_machine(), "", 10);
  CHECK_THAT(u, Catch::Matchers::ContainsSubstring("Budget-Exhausted, steps 10"));
}
