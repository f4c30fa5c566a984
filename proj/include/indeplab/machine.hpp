#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indeplab/bits.hpp"
#include "indeplab/sexpr.hpp"

namespace indeplab {

// Tape alphabet, in canonical order. Cell 0 always holds the left-end marker.
enum class Sym : std::uint8_t { LeftEnd = 0, Zero = 1, One = 2, Blank = 3 };
enum class Move : std::uint8_t { L = 0, S = 1, R = 2 };

inline char sym_char(Sym s) { return ">01_"[static_cast<int>(s)]; }
inline char move_char(Move m) { return "LSR"[static_cast<int>(m)]; }

inline std::optional<Sym> sym_from_char(char c) {
  switch (c) {
    case '>': return Sym::LeftEnd;
    case '0': return Sym::Zero;
    case '1': return Sym::One;
    case '_': return Sym::Blank;
    default: return std::nullopt;
  }
}

inline std::optional<Move> move_from_char(char c) {
  switch (c) {
    case 'L': return Move::L;
    case 'S': return Move::S;
    case 'R': return Move::R;
    default: return std::nullopt;
  }
}

struct Transition {
  int next = 0;
  Sym write = Sym::Blank;
  Move move = Move::S;
  bool operator==(const Transition&) const = default;
};

// Canonical deterministic machine: states 0..n-1, start = 0, halt = n-1
// (n == 1 means start == halt). The halt row is fixed: self-loop with S on
// 0/1/blank, and the forced (halt, >, R) move on the left end.
struct MachineDescription {
  int n = 0;
  std::string name;  // display only; not part of identity
  std::vector<std::array<Transition, 4>> rows;

  int start() const { return 0; }
  int halt() const { return n - 1; }
  const Transition& delta(int q, Sym s) const { return rows[std::size_t(q)][static_cast<int>(s)]; }
};

inline std::array<Transition, 4> halt_row(int halt_state) {
  std::array<Transition, 4> r{};
  r[0] = {halt_state, Sym::LeftEnd, Move::R};
  r[1] = {halt_state, Sym::Zero, Move::S};
  r[2] = {halt_state, Sym::One, Move::S};
  r[3] = {halt_state, Sym::Blank, Move::S};
  return r;
}

inline bool is_halt_like(const std::vector<std::array<Transition, 4>>& rows, int q) {
  const auto& r = rows[std::size_t(q)];
  return r[0] == Transition{q, Sym::LeftEnd, Move::R} && r[1] == Transition{q, Sym::Zero, Move::S} &&
         r[2] == Transition{q, Sym::One, Move::S} && r[3] == Transition{q, Sym::Blank, Move::S};
}

// Checks the machine-model constraints on an arbitrary transition table and
// returns the canonical renumbering (start first, breadth-first discovery
// order, halt last; unreachable non-halt states are dropped).
inline MachineDescription validate_machine_table(int n, int start, int halt,
                                                 const std::vector<std::array<Transition, 4>>& rows,
                                                 std::string name = "") {
  if (n <= 0 || int(rows.size()) != n) throw Error("non-total delta: missing state rows");
  if (start < 0 || start >= n || halt < 0 || halt >= n) throw Error("invalid start/halt state");
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < 4; ++a) {
      const Transition& t = rows[std::size_t(q)][a];
      if (t.next < 0 || t.next >= n) throw Error("non-total delta: transition target out of range");
      if (a == 0) {
        if (t.write != Sym::LeftEnd || t.move != Move::R)
          throw Error("left-end violation: delta(q, >) must write > and move R");
      } else if (t.write == Sym::LeftEnd) {
        throw Error("left-end violation: left-end written onto interior cell");
      }
    }
  }
  if (!is_halt_like(rows, halt)) throw Error("halt-state violation: halt state must self-loop with S");
  for (int q = 0; q < n; ++q)
    if (q != halt && is_halt_like(rows, q)) throw Error("duplicate halt-like state");

  // Canonical order.
  std::vector<int> order;
  std::vector<int> pos(std::size_t(n), -1);
  if (start != halt) {
    order.push_back(start);
    pos[std::size_t(start)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int a = 0; a < 4; ++a) {
        int t = rows[std::size_t(order[i])][a].next;
        if (t != halt && pos[std::size_t(t)] < 0) {
          pos[std::size_t(t)] = int(order.size());
          order.push_back(t);
        }
      }
    }
  }
  order.push_back(halt);
  pos[std::size_t(halt)] = int(order.size()) - 1;

  MachineDescription m;
  m.n = int(order.size());
  m.name = std::move(name);
  if (m.n > 36) throw Error("machine too large for canonical serialization");
  m.rows.resize(std::size_t(m.n));
  for (int q = 0; q + 1 < m.n; ++q) {
    for (int a = 0; a < 4; ++a) {
      Transition t = rows[std::size_t(order[std::size_t(q)])][a];
      t.next = pos[std::size_t(t.next)];
      m.rows[std::size_t(q)][a] = t;
    }
  }
  m.rows[std::size_t(m.n - 1)] = halt_row(m.n - 1);
  return m;
}

inline bool operator==(const MachineDescription& a, const MachineDescription& b) {
  return a.n == b.n && a.rows == b.rows;
}

// --- canonical serialization: (tm <n> <row>...) -------------------------
// Each non-halt row is a 10-char token: the left-end target digit, then
// target/write/move triples for symbols 0, 1, blank.

inline char b36(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }
inline int from_b36(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  throw Error("machine parse: bad state digit");
}

inline SExpr machine_desc_sexpr(const MachineDescription& m) {
  SExpr e = SExpr::mk_list();
  e.push_atom("tm");
  e.push_atom(std::to_string(m.n));
  for (int q = 0; q + 1 < m.n; ++q) {
    std::string tok;
    tok.push_back(b36(m.delta(q, Sym::LeftEnd).next));
    for (int a = 1; a < 4; ++a) {
      const Transition& t = m.rows[std::size_t(q)][a];
      tok.push_back(b36(t.next));
      tok.push_back(sym_char(t.write));
      tok.push_back(move_char(t.move));
    }
    e.push_atom(std::move(tok));
  }
  return e;
}

inline MachineDescription machine_desc_from_sexpr(const SExpr& e) {
  if (e.atom || e.size() < 2 || e.head() != "tm") throw Error("machine parse: expected (tm ...)");
  int n = int(atom_nat(e.at(1)));
  if (n <= 0 || n > 36) throw Error("machine parse: bad state count");
  if (int(e.size()) != 2 + (n - 1)) throw Error("machine parse: wrong row count");
  std::vector<std::array<Transition, 4>> rows(static_cast<std::size_t>(n));
  for (int q = 0; q + 1 < n; ++q) {
    const SExpr& row = e.at(std::size_t(2 + q));
    if (!row.atom || row.text.size() != 10) throw Error("machine parse: bad row token");
    const std::string& t = row.text;
    rows[std::size_t(q)][0] = {from_b36(t[0]), Sym::LeftEnd, Move::R};
    for (int a = 0; a < 3; ++a) {
      auto w = sym_from_char(t[std::size_t(1 + 3 * a + 1)]);
      auto mv = move_from_char(t[std::size_t(1 + 3 * a + 2)]);
      if (!w || !mv) throw Error("machine parse: bad row token");
      rows[std::size_t(q)][a + 1] = {from_b36(t[std::size_t(1 + 3 * a)]), *w, *mv};
    }
  }
  rows[std::size_t(n - 1)] = halt_row(n - 1);
  MachineDescription m = validate_machine_table(n, 0, n - 1, rows);
  if (m.n != n) throw Error("machine parse: non-canonical machine");
  std::string back = sexpr_print(machine_desc_sexpr(m));
  std::string orig = sexpr_print(e);
  if (back != orig) throw Error("machine parse: non-canonical machine");
  return m;
}

// --- configurations ------------------------------------------------------

struct Configuration {
  int state = 0;
  std::size_t head = 0;
  std::string tape;  // from cell 0; tape[0] == '>'; trailing blanks trimmed
  std::uint64_t steps = 0;
};

inline void trim_tape(std::string& tape, std::size_t head) {
  std::size_t keep = tape.size();
  while (keep > head + 1 && keep > 1 && tape[keep - 1] == '_') --keep;
  tape.resize(keep);
}

inline Configuration initial_config(const MachineDescription& m, std::string_view input) {
  if (!is_bits(input)) throw Error("input must be a binary string");
  Configuration c;
  c.state = m.start();
  c.head = 0;
  c.tape = ">" + std::string(input);
  c.steps = 0;
  return c;
}

inline char tape_read(const Configuration& c, std::size_t i) {
  return i < c.tape.size() ? c.tape[i] : '_';
}

inline void step_once(const MachineDescription& m, Configuration& c) {
  Sym cur = *sym_from_char(tape_read(c, c.head));
  const Transition& t = m.delta(c.state, cur);
  if (c.head >= c.tape.size()) c.tape.resize(c.head + 1, '_');
  c.tape[c.head] = sym_char(t.write);
  c.state = t.next;
  switch (t.move) {
    case Move::L:
      if (c.head == 0) throw Error("head moved left of cell 0");  // impossible for valid machines
      --c.head;
      break;
    case Move::R: ++c.head; break;
    case Move::S: break;
  }
  trim_tape(c.tape, c.head);
  ++c.steps;
}

// Snapshot excludes the step count so configuration repeats are detectable.
inline std::string config_snapshot(const Configuration& c) {
  std::string tape = c.tape;
  std::size_t keep = tape.size();
  while (keep > 1 && tape[keep - 1] == '_') --keep;
  tape.resize(keep);
  return std::to_string(c.state) + ":" + std::to_string(c.head) + ":" + tape;
}

inline SExpr config_sexpr(const Configuration& c) {
  SExpr e = SExpr::mk_list();
  e.push_atom("cf");
  e.push_atom(std::to_string(c.state));
  e.push_atom(std::to_string(c.head));
  e.push_atom(c.tape);
  return e;
}

inline Configuration config_from_sexpr(const SExpr& e, std::uint64_t steps) {
  if (e.atom || e.size() != 4 || e.head() != "cf") throw Error("config parse: expected (cf ...)");
  Configuration c;
  c.state = int(atom_nat(e.at(1)));
  c.head = std::size_t(atom_nat(e.at(2)));
  if (!e.at(3).atom) throw Error("config parse: bad tape");
  c.tape = e.at(3).text;
  if (c.tape.empty() || c.tape[0] != '>') throw Error("config parse: bad tape");
  c.steps = steps;
  return c;
}

// Output convention: tape contents from cell 1 to the last non-blank cell.
inline std::string read_output(const Configuration& c) {
  std::string out;
  std::size_t last = 0;
  for (std::size_t i = 1; i < c.tape.size(); ++i)
    if (c.tape[i] != '_') last = i;
  for (std::size_t i = 1; i <= last && last > 0; ++i) out.push_back(c.tape[i]);
  return out;
}

struct RunOutcome {
  enum class Kind { Halted, BudgetExhausted };
  Kind kind = Kind::BudgetExhausted;
  std::string output;  // defined only when Halted
  std::uint64_t steps_used = 0;
  bool halted() const { return kind == Kind::Halted; }
};

inline RunOutcome run_bounded_raw(const MachineDescription& m, std::string_view input,
                                  std::uint64_t budget) {
  Configuration c = initial_config(m, input);
  while (c.state != m.halt() && c.steps < budget) step_once(m, c);
  RunOutcome r;
  if (c.state == m.halt()) {
    r.kind = RunOutcome::Kind::Halted;
    r.output = read_output(c);
    r.steps_used = c.steps;
  } else {
    r.kind = RunOutcome::Kind::BudgetExhausted;
    r.steps_used = c.steps;
  }
  return r;
}

// --- machine file format --------------------------------------------------
// machine <name>
// start <state>
// halt <state>
// <state> <symbol> -> <state> <symbol> <move>

inline MachineDescription parse_machine_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string name, start_name, halt_name;
  std::vector<std::string> state_names;
  std::map<std::string, int> state_ids;
  auto intern = [&](const std::string& s) {
    auto it = state_ids.find(s);
    if (it != state_ids.end()) return it->second;
    int id = int(state_names.size());
    state_names.push_back(s);
    state_ids.emplace(s, id);
    return id;
  };
  std::map<std::pair<int, int>, Transition> table;
  bool saw_machine = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0].starts_with("#")) continue;
    if (tok[0] == "machine") {
      if (tok.size() != 2 || saw_machine) throw Error("machine file: bad 'machine' line");
      name = tok[1];
      saw_machine = true;
    } else if (tok[0] == "start") {
      if (tok.size() != 2 || !start_name.empty()) throw Error("machine file: bad 'start' line");
      start_name = tok[1];
      intern(start_name);
    } else if (tok[0] == "halt") {
      if (tok.size() != 2 || !halt_name.empty()) throw Error("machine file: bad 'halt' line");
      halt_name = tok[1];
      intern(halt_name);
    } else {
      if (tok.size() != 6 || tok[2] != "->")
        throw Error("machine file: expected '<state> <sym> -> <state> <sym> <move>'");
      if (tok[1].size() != 1 || tok[4].size() != 1 || tok[5].size() != 1)
        throw Error("machine file: bad symbol or move token");
      auto rs = sym_from_char(tok[1][0]);
      auto ws = sym_from_char(tok[4][0]);
      auto mv = move_from_char(tok[5][0]);
      if (!rs || !ws) throw Error("machine file: unknown symbol");
      if (!mv) throw Error("machine file: unknown move");
      int q = intern(tok[0]);
      int p = intern(tok[3]);
      auto key = std::make_pair(q, int(*rs));
      if (table.count(key)) throw Error("machine file: duplicate transition for " + tok[0] + " " + tok[1]);
      table[key] = Transition{p, *ws, *mv};
    }
  }
  if (!saw_machine) throw Error("machine file: missing 'machine' header");
  if (start_name.empty() || halt_name.empty()) throw Error("machine file: missing start or halt");
  int n = int(state_names.size());
  std::vector<std::array<Transition, 4>> rows(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < 4; ++a) {
      auto it = table.find({q, a});
      if (it == table.end())
        throw Error("non-total delta: missing transition for " + state_names[std::size_t(q)] +
                    " " + std::string(1, sym_char(Sym(a))));
      rows[std::size_t(q)][a] = it->second;
    }
  return validate_machine_table(n, state_ids.at(start_name), state_ids.at(halt_name), rows, name);
}

inline std::string machine_file_print(const MachineDescription& m) {
  std::ostringstream out;
  out << "machine " << (m.name.empty() ? std::string("m") : m.name) << "\n";
  auto nm = [&](int q) { return q == m.halt() ? std::string("h") : "q" + std::to_string(q); };
  out << "start " << nm(m.start()) << "\n";
  out << "halt " << nm(m.halt()) << "\n";
  for (int q = 0; q < m.n; ++q)
    for (int a = 0; a < 4; ++a) {
      const Transition& t = m.rows[std::size_t(q)][a];
      out << nm(q) << " " << sym_char(Sym(a)) << " -> " << nm(t.next) << " " << sym_char(t.write)
          << " " << move_char(t.move) << "\n";
    }
  return out.str();
}

// --- small machine builders -----------------------------------------------

// start == halt; halts in 0 steps, output == input.
inline MachineDescription halt_only_machine() {
  std::vector<std::array<Transition, 4>> rows{halt_row(0)};
  return validate_machine_table(1, 0, 0, rows, "halt-only");
}

// Never halts: stays in place after leaving the left end. (The move on 1
// keeps the working state distinguishable from the halt shape.)
inline MachineDescription self_loop_machine() {
  std::vector<std::array<Transition, 4>> rows(2);
  rows[0][0] = {0, Sym::LeftEnd, Move::R};
  rows[0][1] = {0, Sym::Zero, Move::S};
  rows[0][2] = {0, Sym::One, Move::L};
  rows[0][3] = {0, Sym::Blank, Move::S};
  rows[1] = halt_row(1);
  return validate_machine_table(2, 0, 1, rows, "self-loop");
}

// Never halts: two states handing control back and forth in place.
inline MachineDescription ping_pong_machine() {
  std::vector<std::array<Transition, 4>> rows(3);
  rows[0][0] = {0, Sym::LeftEnd, Move::R};
  rows[0][1] = {1, Sym::Zero, Move::S};
  rows[0][2] = {1, Sym::One, Move::S};
  rows[0][3] = {1, Sym::Blank, Move::S};
  rows[1][0] = {1, Sym::LeftEnd, Move::R};
  rows[1][1] = {0, Sym::Zero, Move::S};
  rows[1][2] = {0, Sym::One, Move::S};
  rows[1][3] = {0, Sym::Blank, Move::S};
  rows[2] = halt_row(2);
  return validate_machine_table(3, 0, 2, rows, "ping-pong");
}

// Scans right over the input and halts on the first blank; t(n) = n + 2.
inline MachineDescription move_right_machine() {
  std::vector<std::array<Transition, 4>> rows(2);
  rows[0][0] = {0, Sym::LeftEnd, Move::R};
  rows[0][1] = {0, Sym::Zero, Move::R};
  rows[0][2] = {0, Sym::One, Move::R};
  rows[0][3] = {1, Sym::Blank, Move::S};
  rows[1] = halt_row(1);
  return validate_machine_table(2, 0, 1, rows, "move-right");
}

// Halts after exactly k steps on every input.
inline MachineDescription step_counter_machine(int k) {
  if (k == 0) return halt_only_machine();
  int n = k + 1;  // q0..q_{k-1}, halt
  std::vector<std::array<Transition, 4>> rows(static_cast<std::size_t>(n));
  for (int q = 0; q < k; ++q) {
    int next = q + 1;
    rows[std::size_t(q)][0] = {next, Sym::LeftEnd, Move::R};
    rows[std::size_t(q)][1] = {next, Sym::Zero, Move::S};
    rows[std::size_t(q)][2] = {next, Sym::One, Move::S};
    rows[std::size_t(q)][3] = {next, Sym::Blank, Move::S};
  }
  rows[std::size_t(k)] = halt_row(k);
  auto m = validate_machine_table(n, 0, k, rows, "steps-" + std::to_string(k));
  return m;
}

}  // namespace indeplab
