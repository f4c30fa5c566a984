#include <catch_amalgamated.hpp>

#include <set>

#include "indeplab/constructions.hpp"
#include "indeplab/indeplab.hpp"

using namespace indeplab;

TEST_CASE("machine expressions round-trip through serialization") {
  std::vector<MachinePtr> ms = {
      mk_raw(ping_pong_machine()),
      mk_builtin("par"),
      mk_const_nat(0),
      mk_const_nat(50),
      build_O(self_loop_machine(), "01"),
      build_Q(mk_raw(step_counter_machine(2)), mk_builtin("pop"), "1"),
      mk_patch(mk_builtin("c0"), 2, "011"),
      mk_diag_compose(build_O(self_loop_machine(), ""), mk_builtin("dbl")),
      mk_fixed_point(""),
      mk_comparator(mk_builtin("par"), mk_builtin("c1")),
      mk_goldbach(),
  };
  for (auto& m : ms) {
    MachinePtr back = machine_from_sexpr(sexpr_parse(machine_ser(m)));
    CHECK(same_machine(m, back));
  }
}

TEST_CASE("statements and proofs round-trip through serialization") {
  auto hp = certify_halting(move_right_machine(), "101", 100);
  REQUIRE(hp);
  CHECK(hp->halt_steps == 5);
  CHECK(proof_ser(proof_from_sexpr(sexpr_parse(proof_ser(*hp)))) == proof_ser(*hp));

  auto np = find_nonhalting_proof(self_loop_machine(), "", 100);
  REQUIRE(np);
  CHECK(proof_ser(*np) == "(pf (n (tm 2 000S01L0_S) #) (cyc 1 1))");
  CHECK(proof_ser(proof_from_sexpr(sexpr_parse(proof_ser(*np)))) == proof_ser(*np));
}

TEST_CASE("halting certificates replay exactly and tampering is caught") {
  auto hp = certify_halting(move_right_machine(), "11", 100);
  REQUIRE(hp);
  CHECK(check_proof(hp->subject, *hp).accepted);

  Proof bad = *hp;
  bad.trace[2].head += 1;
  CHECK(check_proof(bad.subject, bad).reason == "trace-replay-mismatch");

  Proof wrong_subject = *hp;
  wrong_subject.subject.w = "10";
  CHECK(check_proof(hp->subject, wrong_subject).reason == "subject-mismatch");

  Proof truncated = *hp;
  truncated.trace.pop_back();
  CHECK(check_proof(truncated.subject, truncated).reason == "malformed");
}

TEST_CASE("cycle certificates are canonical: first repeat only") {
  auto np = find_nonhalting_proof(ping_pong_machine(), "", 100);
  REQUIRE(np);
  CHECK(np->prefix == 1);
  CHECK(np->cycle == 2);
  CHECK(check_proof(np->subject, *np).accepted);

  Proof unrolled = *np;
  unrolled.cycle *= 2;  // a true but non-canonical description of the loop
  CHECK(check_proof(unrolled.subject, unrolled).reason == "cycle-not-canonical");

  Proof halter = *np;
  halter.subject.m1 = mk_raw(step_counter_machine(1));
  halter.subject.w = "";
  CHECK(check_proof(halter.subject, halter).reason == "halts-within-span");
}

TEST_CASE("trace and cycle certificates are only accepted for tabular machines") {
  MachinePtr composite = build_O(self_loop_machine(), "");
  Statement h;
  h.kind = Statement::Kind::Halts;
  h.m1 = composite;
  h.w = "";
  Proof hp;
  hp.kind = Proof::Kind::HaltTrace;
  hp.subject = h;
  CHECK(check_proof(h, hp).reason == "trace-requires-raw");

  Statement n;
  n.kind = Statement::Kind::NotHalts;
  n.m1 = composite;
  n.w = "";
  Proof np;
  np.kind = Proof::Kind::CycleCertificate;
  np.subject = n;
  np.prefix = 0;
  np.cycle = 1;
  CHECK(check_proof(n, np).reason == "cycle-requires-raw");
}

TEST_CASE("time-bound certificates must match the canonical derivation") {
  MachinePtr o = build_O(step_counter_machine(3), "");
  auto pr = make_timebound_proof(o);
  REQUIRE(pr);
  CHECK(pr->subject.bound.a == 2);
  CHECK(pr->subject.bound.k == 1);
  CHECK(pr->subject.bound.b == 1);
  CHECK(check_proof(pr->subject, *pr).accepted);

  Proof loose = *pr;
  loose.subject.bound.b += 5;  // still true, but not the canonical bound
  loose.deriv.steps.b += 5;
  CHECK_FALSE(check_proof(loose.subject, loose).accepted);

  CHECK_FALSE(make_timebound_proof(mk_raw(self_loop_machine())).has_value());
  CHECK_FALSE(make_timebound_proof(mk_fixed_point("")).has_value());
  CHECK_FALSE(make_timebound_proof(mk_builtin("exp")).has_value());
}

TEST_CASE("the enumeration starts with the trivial halting theorem") {
  auto [st, pr] = enumerate_theorems(0);
  CHECK(proof_ser(pr) == "(pf (h (tm 1) #) (ht 0 (cf 0 0 >)))");
  CHECK(check_proof(st, pr).accepted);
}

TEST_CASE("the enumeration is length-lexicographic and duplicate-free") {
  std::set<std::string> seen;
  std::string prev;
  for (std::size_t k = 0; k < 500; ++k) {
    auto [st, pr] = enumerate_theorems(k);
    std::string ser = proof_ser(pr);
    CHECK(seen.insert(ser).second);
    if (k > 0)
      CHECK((prev.size() < ser.size() || (prev.size() == ser.size() && prev < ser)));
    prev = ser;
  }
}

TEST_CASE("repeated enumeration of the same index is stable") {
  auto a = enumerate_theorems(137);
  auto b = enumerate_theorems(137);
  CHECK(proof_ser(a.second) == proof_ser(b.second));
}

TEST_CASE("no pair is certified both halting and non-halting in the first 500") {
  std::set<std::string> halts, nothalts;
  for (std::size_t k = 0; k < 500; ++k) {
    auto [st, pr] = enumerate_theorems(k);
    std::string key = machine_ser(st.m1) + "|" + st.w;
    if (st.kind == Statement::Kind::Halts) halts.insert(key);
    if (st.kind == Statement::Kind::NotHalts) nothalts.insert(key);
  }
  for (auto& k : halts) CHECK_FALSE(nothalts.count(k));
}

TEST_CASE("neither verdict about the fixed point appears early in the enumeration") {
  auto [mh, wh] = build_fixed_point();
  Statement halts, not_halts;
  halts.kind = Statement::Kind::Halts;
  halts.m1 = mh;
  halts.w = wh;
  not_halts.kind = Statement::Kind::NotHalts;
  not_halts.m1 = mh;
  not_halts.w = wh;
  for (std::size_t k = 0; k < 2000; ++k) {
    auto [st, pr] = enumerate_theorems(k);
    std::string s = statement_ser(st);
    CHECK(s != statement_ser(halts));
    CHECK(s != statement_ser(not_halts));
  }
}
