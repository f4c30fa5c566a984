// Command-line front door for the machine laboratory. Every verb is a thin
// adapter over the library calls; reports are plain text with stable field
// ordering so runs can be diffed.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "indeplab/indeplab.hpp"
#include "indeplab/verify.hpp"

namespace {

using namespace indeplab;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> parse_kv(const std::string& body, const std::string& what) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw Error(what + ": expected key=value, got \"" + part + "\"");
    kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, bool> parse_table_file(const std::string& path) {
  std::map<std::string, bool> table;
  std::stringstream ss(slurp(path));
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw Error("table: expected `bits -> 0|1`: " + line);
    std::string bits = trim(line.substr(0, arrow));
    std::string val = trim(line.substr(arrow + 2));
    if (!is_bits(bits)) throw Error("table: not a bit string: \"" + bits + "\"");
    if (val != "0" && val != "1") throw Error("table: value must be 0 or 1: " + line);
    table[bits] = val == "1";
  }
  return table;
}

MachinePtr load_machine(const std::string& arg);

MachinePtr load_descriptor(const std::string& head, const std::string& arg) {
  std::string body = arg.substr(head.size() + 1, arg.size() - head.size() - 2);
  auto kv = parse_kv(body, head);
  auto need = [&](const char* k) -> std::string {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(head + ": missing " + k + "=");
    return it->second;
  };
  if (head == "O") return build_O(load_machine(need("machine")), need("w"));
  if (head == "Q") return build_Q(load_machine(need("m1")), load_machine(need("m2")), need("w"));
  if (head == "patch") {
    int m = std::stoi(need("m"));
    LanguageView base{load_machine(need("base"))};
    return patch_language(base, parse_table_file(need("table")), m).decider;
  }
  throw Error("unknown descriptor: " + head);
}

// A machine argument is a builder descriptor, a builtin tag, or a file
// holding either the tabular machine format or a serialized expression.
MachinePtr load_machine(const std::string& arg) {
  for (const char* head : {"O", "Q", "patch"})
    if (arg.rfind(std::string(head) + "(", 0) == 0 && arg.back() == ')')
      return load_descriptor(head, arg);
  if (arg.rfind("builtin:", 0) == 0) return mk_builtin(arg.substr(8));
  std::string text = slurp(arg);
  std::string t = trim(text);
  if (!t.empty() && t[0] == '(') return machine_from_sexpr(sexpr_parse(t));
  return mk_raw(parse_machine_file(text));
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + out_path);
    out << text;
  }
}

std::string bits_check(const std::string& w) {
  if (!is_bits(w)) throw Error("input must be a bit string: \"" + w + "\"");
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace indeplab;
  CLI::App app{"machine laboratory: build, run, race, enumerate, and verify"};
  app.require_subcommand(1);

  std::string machine_arg, machine_b, input, out_path, suite = "all", table_path;
  std::string w_arg, m0_arg, m1_arg, m2_arg, tl0_arg;
  std::uint64_t budget = 1000000, n_arg = 0, count = 20, start = 0, lo = 0, hi = 20;
  std::uint32_t seed = 12345;
  int max_len = 8, m_thresh = 0;
  bool do_trace = false;
  std::string code_str;

  auto add_out = [&](CLI::App* c) { c->add_option("--out", out_path, "also write the report here"); };

  auto* validate = app.add_subcommand("validate", "check a machine file");
  validate->add_option("machine", machine_arg)->required();

  auto* run = app.add_subcommand("run", "run a machine on an input");
  run->add_option("machine", machine_arg)->required();
  run->add_option("--input", input);
  run->add_option("--budget", budget);
  run->add_flag("--trace", do_trace, "emit one line per step (tabular machines only)");
  add_out(run);

  auto* profile = app.add_subcommand("profile", "max steps per input length, exhaustively");
  profile->add_option("machine", machine_arg)->required();
  profile->add_option("--max-len", max_len);
  add_out(profile);

  auto* race_cmd = app.add_subcommand("race", "dovetail simulation against the theorem enumeration");
  race_cmd->add_option("machine", machine_arg)->required();
  race_cmd->add_option("--input", input);
  race_cmd->add_option("--budget", budget);
  add_out(race_cmd);

  auto* build_o = app.add_subcommand("build-o", "build the threshold machine for (machine, w)");
  build_o->add_option("--machine", m1_arg)->required();
  build_o->add_option("--w", w_arg);
  add_out(build_o);

  auto* build_q = app.add_subcommand("build-q", "build the switch composition of two machines");
  build_q->add_option("--m1", m1_arg)->required();
  build_q->add_option("--m2", m2_arg)->required();
  build_q->add_option("--w", w_arg);
  add_out(build_q);

  auto* patch = app.add_subcommand("patch", "override a decider on all strings below a length");
  patch->add_option("--base", m1_arg)->required();
  patch->add_option("--table", table_path)->required();
  patch->add_option("--m", m_thresh)->required();
  add_out(patch);

  auto* almost = app.add_subcommand("almost-eq", "probe almost-equality of two deciders");
  almost->add_option("a", machine_arg)->required();
  almost->add_option("b", machine_b)->required();
  almost->add_option("--max-len", max_len);
  add_out(almost);

  auto* enum_cmd = app.add_subcommand("enumerate", "list enumerated theorems");
  enum_cmd->add_option("--count", count);
  enum_cmd->add_option("--start", start);
  add_out(enum_cmd);

  auto* encode = app.add_subcommand("encode", "encode the canonical quadruplet for (m0, m2)");
  encode->add_option("--m0", m0_arg)->required();
  encode->add_option("--m2", m2_arg)->required();
  add_out(encode);

  auto* decode = app.add_subcommand("decode", "decode a natural number as a quadruplet");
  decode->add_option("code", code_str)->required();
  add_out(decode);

  auto* tmo = app.add_subcommand("tmo", "dump member/T/f values over a code range");
  tmo->add_option("--m0", m0_arg)->required();
  tmo->add_option("--lo", lo);
  tmo->add_option("--hi", hi);
  add_out(tmo);

  auto* f_cmd = app.add_subcommand("f", "evaluate the switch function at one point");
  f_cmd->add_option("--m0", m0_arg)->required();
  f_cmd->add_option("--n", n_arg)->required();
  add_out(f_cmd);

  auto* switch_cmd = app.add_subcommand("switch", "run the switch machine over a base decider");
  switch_cmd->add_option("--tl0", tl0_arg)->required();
  switch_cmd->add_option("--m0", m0_arg)->required();
  switch_cmd->add_option("--input", input);
  add_out(switch_cmd);

  auto* compare = app.add_subcommand("compare", "run the comparator of two deciders");
  compare->add_option("--a", m1_arg)->required();
  compare->add_option("--b", m2_arg)->required();
  compare->add_option("--input", input);
  add_out(compare);

  auto* goldbach = app.add_subcommand("demo-goldbach", "run the conjecture-hunter demo machine");
  goldbach->add_option("--input", input);
  goldbach->add_option("--budget", budget);
  add_out(goldbach);

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite);
  verify->add_option("--max-len", max_len);
  verify->add_option("--seed", seed);
  verify->add_option("--budget", budget);
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::ostringstream rep;
    if (*validate) {
      parse_machine_file(slurp(machine_arg));
      rep << "valid\n";
    } else if (*run) {
      MachinePtr m = load_machine(machine_arg);
      bits_check(input);
      if (do_trace) {
        if (m->kind != Machine::Kind::Raw)
          throw Error("--trace requires a tabular machine file");
        rep << trace_run(m->desc, input, budget);
      } else {
        RunOutcome r = run_bounded(m, input, budget);
        if (r.halted())
          rep << "Halted steps " << r.steps_used << " output \"" << r.output << "\"\n";
        else
          rep << "Budget-Exhausted steps " << r.steps_used << "\n";
      }
    } else if (*profile) {
      auto entries = time_complexity_profile(load_machine(machine_arg), max_len);
      for (auto& e : entries)
        rep << "len " << e.length << ": max_steps=" << e.max_steps << " witness=\"" << e.witness
            << "\"\n";
    } else if (*race_cmd) {
      RacerVerdict v = race(load_machine(machine_arg), bits_check(input), budget);
      switch (v.kind) {
        case RacerVerdict::Kind::Accept: rep << "Accept halt_step=" << v.halt_step << "\n"; break;
        case RacerVerdict::Kind::Reject: rep << "Reject proof_index=" << v.proof_index << "\n"; break;
        case RacerVerdict::Kind::StillRunning: rep << "StillRunning rounds=" << v.rounds << "\n"; break;
      }
    } else if (*build_o) {
      rep << machine_ser(build_O(load_machine(m1_arg), bits_check(w_arg))) << "\n";
    } else if (*build_q) {
      rep << machine_ser(build_Q(load_machine(m1_arg), load_machine(m2_arg), bits_check(w_arg)))
          << "\n";
    } else if (*patch) {
      LanguageView base{load_machine(m1_arg)};
      rep << machine_ser(patch_language(base, parse_table_file(table_path), m_thresh).decider)
          << "\n";
    } else if (*almost) {
      AlmostEqualVerdict v = almost_equal(LanguageView{load_machine(machine_arg)},
                                          LanguageView{load_machine(machine_b)}, max_len);
      if (v.divergent)
        rep << "Divergent\n";
      else
        rep << "Equal-beyond m=" << v.m << "\n";
      for (auto& w : v.witnesses) rep << "disagree \"" << w << "\"\n";
    } else if (*enum_cmd) {
      for (std::uint64_t k = start; k < start + count; ++k) {
        auto [st, pr] = enumerate_theorems(std::size_t(k));
        rep << k << "\t" << statement_ser(st) << "\t" << proof_ser(pr) << "\n";
      }
    } else if (*encode) {
      Quadruplet q = make_quadruplet(load_machine(m0_arg), load_machine(m2_arg));
      rep << "code " << t_encode(q) << "\n" << quadruplet_ser(q) << "\n";
    } else if (*decode) {
      BigNat code;
      try {
        code = BigNat(code_str);
      } catch (...) {
        throw Error("decode: not a natural number: " + code_str);
      }
      auto q = t_decode(code);
      if (q)
        rep << quadruplet_ser(*q) << "\n";
      else
        rep << "non-code\n";
    } else if (*tmo) {
      DiagonalEvaluator ev = make_evaluator(load_machine(m0_arg));
      rep << dump_code_points(ev, lo, hi);
    } else if (*f_cmd) {
      DiagonalEvaluator ev = make_evaluator(load_machine(m0_arg));
      rep << "T " << ev.T(n_arg) << "\nf " << ev.f(n_arg) << "\n";
    } else if (*switch_cmd) {
      DiagonalEvaluator ev = make_evaluator(load_machine(m0_arg));
      MachinePtr u = build_theorem2_switch(load_machine(tl0_arg), ev);
      RunOutcome r = run_bounded(u, bits_check(input), safety_budget());
      if (!r.halted()) throw Error("switch: safety budget exhausted");
      rep << machine_ser(u) << "\noutput \"" << r.output << "\"\n";
    } else if (*compare) {
      MachinePtr c = build_comparator(load_machine(m1_arg), load_machine(m2_arg));
      RunOutcome r = run_bounded(c, bits_check(input), safety_budget());
      if (!r.halted()) throw Error("compare: safety budget exhausted");
      rep << machine_ser(c) << "\noutput \"" << r.output << "\"\n";
    } else if (*goldbach) {
      RunOutcome r = run_bounded(build_goldbach_demo(), bits_check(input), budget);
      if (r.halted())
        rep << "Halted steps " << r.steps_used << " output \"" << r.output << "\"\n";
      else
        rep << "Budget-Exhausted steps " << r.steps_used << "\n";
    } else if (*verify) {
      VerifyOptions opt;
      opt.max_len = max_len;
      opt.seed = seed;
      opt.budget = budget;
      std::vector<int> ids;
      if (suite == "all") {
        for (int i = 1; i <= 9; ++i) ids.push_back(i);
      } else if (auto id = suite_criterion(suite)) {
        ids.push_back(*id);
      } else {
        throw Error("unknown suite: " + suite);
      }
      bool all_pass = true;
      for (int id : ids) {
        CriterionResult r = run_criterion(id, opt);
        all_pass = all_pass && r.pass;
        rep << r.name << " " << (r.pass ? "PASS" : "FAIL") << " checks=" << r.checks;
        if (!r.detail.empty()) rep << " " << r.detail;
        rep << "\n";
      }
      emit(rep.str(), out_path);
      return all_pass ? 0 : 1;
    }
    emit(rep.str(), out_path);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
