#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "indeplab/machine.hpp"
#include "indeplab/sexpr.hpp"

namespace indeplab {

// Polynomial step/value bound a*n^k + b with k >= 1; constants use a = 0.
struct Poly {
  std::uint64_t a = 0, k = 1, b = 0;
  bool operator==(const Poly&) const = default;
  std::uint64_t eval(std::uint64_t n) const {
    std::uint64_t p = 1;
    for (std::uint64_t i = 0; i < k; ++i) p *= n;
    return a * p + b;
  }
};

inline Poly poly_add(const Poly& x, const Poly& y) {
  return Poly{x.a + y.a, std::max(x.k, y.k), x.b + y.b};
}

// Substitutes a value bound v into a linear bound a*n + b.
inline Poly poly_compose_linear(const Poly& lin, const Poly& v) {
  if (lin.k != 1) throw Error("poly compose: outer bound must be linear");
  return Poly{lin.a * v.a, v.k, lin.a * v.b + lin.b};
}

struct Machine;
using MachinePtr = std::shared_ptr<const Machine>;
struct Statement;
struct Proof;
struct Quadruplet;
struct EvaluatorSpec;
using EvaluatorSpecPtr = std::shared_ptr<const EvaluatorSpec>;

// Machines are expression trees: raw transition tables at the leaves,
// interpreter-backed combinators above them. Built machines keep their
// construction provenance, which is what equality certificates consume.
struct Machine {
  enum class Kind {
    Raw,          // 5-tuple table
    Builtin,      // small named machine with fixed cost model
    ConstNat,     // n -> constant value
    OComb,        // threshold machine over (inner, w)
    QComb,        // threshold switch then fallback decider
    PatchComb,    // finite table below length m, base at/above
    DiagCompose,  // n -> m0 on the all-zeros string of length m2(n)
    FixedPoint,   // searches the theorem enumeration for its own non-halting
    SwitchU,      // n -> f(n)==1 ? tl0(n) : 1-tl0(n)
    Comparator,   // n -> [a(n) == b(n)]
    TmoWrapper,   // n -> growth function of an evaluator
    Goldbach      // halts on long inputs, conjecture search on length 1
  };
  Kind kind = Kind::Raw;
  MachineDescription desc;    // Raw
  std::string tag;            // Builtin
  std::uint64_t cval = 0;     // ConstNat
  MachinePtr a, b;            // children
  std::string w;              // OComb / QComb / FixedPoint embedded input
  int patch_m = 0;            // PatchComb
  std::string patch_bits;     // PatchComb: verdicts, strings in length-lex order
  EvaluatorSpecPtr ev;        // SwitchU / TmoWrapper
};

struct Statement {
  enum class Kind { Halts, NotHalts, TimeBound, PointwiseEqual };
  Kind kind = Kind::Halts;
  MachinePtr m1;
  MachinePtr m2;     // PointwiseEqual only
  std::string w;     // Halts / NotHalts
  Poly bound;        // TimeBound
  std::string tag;   // PointwiseEqual composer tag
};

// Structural derivation mirroring a machine expression; time-bound
// derivations carry a step polynomial, totality derivations also carry an
// output-value polynomial.
struct Derivation {
  std::string tag;
  Poly steps;
  bool has_value = false;
  Poly value;
  std::vector<Derivation> children;
};

struct Proof {
  enum class Kind { HaltTrace, CycleCertificate, TimeBoundCertificate, EqualityCertificate };
  Kind kind = Kind::HaltTrace;
  Statement subject;
  std::uint64_t halt_steps = 0;
  std::vector<Configuration> trace;  // configs after steps 0..halt_steps
  std::uint64_t prefix = 0, cycle = 0;
  Derivation deriv;  // TimeBound derivation, or totality derivation for m2
};

struct Quadruplet {
  MachinePtr m1, m2;
  Proof p1;  // subject: TimeBound for m1
  Proof p2;  // subject: PointwiseEqual(m1, m2, "dc")
};

struct EvaluatorSpec {
  MachinePtr m0;
  std::map<std::uint64_t, Quadruplet> seeds;  // desk population of member codes
};

// --- constructors -----------------------------------------------------

inline MachinePtr mk_raw(MachineDescription d) {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::Raw;
  m->desc = std::move(d);
  return m;
}

inline const std::vector<std::string>& builtin_tags() {
  static const std::vector<std::string> tags = {"c0", "c1",  "par", "pop", "lenpar",
                                                "exp", "id", "dbl", "len"};
  return tags;
}

inline MachinePtr mk_builtin(const std::string& tag) {
  bool ok = false;
  for (auto& t : builtin_tags()) ok = ok || t == tag;
  if (!ok) throw Error("unknown builtin machine tag: " + tag);
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::Builtin;
  m->tag = tag;
  return m;
}

inline MachinePtr mk_const_nat(std::uint64_t v) {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::ConstNat;
  m->cval = v;
  return m;
}

inline MachinePtr mk_o(MachinePtr inner, std::string w) {
  if (!is_bits(w)) throw Error("O: w must be a binary string");
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::OComb;
  m->a = std::move(inner);
  m->w = std::move(w);
  return m;
}

inline MachinePtr mk_q(MachinePtr m1, MachinePtr m2, std::string w) {
  if (!is_bits(w)) throw Error("Q: w must be a binary string");
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::QComb;
  m->a = std::move(m1);
  m->b = std::move(m2);
  m->w = std::move(w);
  return m;
}

inline MachinePtr mk_patch(MachinePtr base, int patch_m, std::string patch_bits) {
  if (patch_m < 0 || patch_m > 20) throw Error("patch: bad threshold");
  std::uint64_t want = (std::uint64_t(1) << patch_m) - 1;
  if (patch_bits.size() != want || !is_bits(patch_bits))
    throw Error("patch: table must cover exactly the strings of length < m");
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::PatchComb;
  m->a = std::move(base);
  m->patch_m = patch_m;
  m->patch_bits = std::move(patch_bits);
  return m;
}

inline MachinePtr mk_diag_compose(MachinePtr m0, MachinePtr m2) {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::DiagCompose;
  m->a = std::move(m0);
  m->b = std::move(m2);
  return m;
}

inline MachinePtr mk_fixed_point(std::string w) {
  if (!is_bits(w)) throw Error("fixed point: w must be a binary string");
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::FixedPoint;
  m->w = std::move(w);
  return m;
}

inline MachinePtr mk_switch(MachinePtr tl0, EvaluatorSpecPtr ev) {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::SwitchU;
  m->a = std::move(tl0);
  m->ev = std::move(ev);
  return m;
}

inline MachinePtr mk_comparator(MachinePtr tm, MachinePtr tl0) {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::Comparator;
  m->a = std::move(tm);
  m->b = std::move(tl0);
  return m;
}

inline MachinePtr mk_tmo(EvaluatorSpecPtr ev) {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::TmoWrapper;
  m->ev = std::move(ev);
  return m;
}

inline MachinePtr mk_goldbach() {
  auto m = std::make_shared<Machine>();
  m->kind = Machine::Kind::Goldbach;
  return m;
}

// --- serialization ------------------------------------------------------

SExpr machine_sexpr(const Machine& m);
MachinePtr machine_from_sexpr(const SExpr& e);
SExpr statement_sexpr(const Statement& s);
Statement statement_from_sexpr(const SExpr& e);
SExpr proof_sexpr(const Proof& p);
Proof proof_from_sexpr(const SExpr& e);
SExpr quadruplet_sexpr(const Quadruplet& q);
Quadruplet quadruplet_from_sexpr(const SExpr& e);
SExpr evaluator_spec_sexpr(const EvaluatorSpec& ev);
EvaluatorSpecPtr evaluator_spec_from_sexpr(const SExpr& e);

inline std::string machine_ser(const Machine& m) { return sexpr_print(machine_sexpr(m)); }
inline std::string machine_ser(const MachinePtr& m) { return machine_ser(*m); }
inline std::string statement_ser(const Statement& s) { return sexpr_print(statement_sexpr(s)); }
inline std::string proof_ser(const Proof& p) { return sexpr_print(proof_sexpr(p)); }
inline std::string quadruplet_ser(const Quadruplet& q) { return sexpr_print(quadruplet_sexpr(q)); }

inline bool same_machine(const Machine& x, const Machine& y) {
  return machine_ser(x) == machine_ser(y);
}
inline bool same_machine(const MachinePtr& x, const MachinePtr& y) {
  return same_machine(*x, *y);
}

inline SExpr poly_push(SExpr e, const Poly& p) {
  e.push_atom(std::to_string(p.a));
  e.push_atom(std::to_string(p.k));
  e.push_atom(std::to_string(p.b));
  return e;
}

inline Poly poly_from(const SExpr& e, std::size_t i) {
  Poly p{atom_nat(e.at(i)), atom_nat(e.at(i + 1)), atom_nat(e.at(i + 2))};
  if (p.k < 1 || p.k > 8) throw Error("poly parse: bad exponent");
  return p;
}

inline SExpr machine_sexpr(const Machine& m) {
  using K = Machine::Kind;
  SExpr e = SExpr::mk_list();
  switch (m.kind) {
    case K::Raw: return machine_desc_sexpr(m.desc);
    case K::Builtin:
      e.push_atom("bi");
      e.push_atom(m.tag);
      return e;
    case K::ConstNat:
      e.push_atom("bc");
      e.push_atom(bits_atom(nat_to_bits(m.cval)));
      return e;
    case K::OComb:
      e.push_atom("O");
      e.push(machine_sexpr(*m.a));
      e.push_atom(bits_atom(m.w));
      return e;
    case K::QComb:
      e.push_atom("Q");
      e.push(machine_sexpr(*m.a));
      e.push(machine_sexpr(*m.b));
      e.push_atom(bits_atom(m.w));
      return e;
    case K::PatchComb:
      e.push_atom("P");
      e.push(machine_sexpr(*m.a));
      e.push_atom(std::to_string(m.patch_m));
      e.push_atom(bits_atom(m.patch_bits));
      return e;
    case K::DiagCompose:
      e.push_atom("dc");
      e.push(machine_sexpr(*m.a));
      e.push(machine_sexpr(*m.b));
      return e;
    case K::FixedPoint:
      e.push_atom("fx");
      e.push_atom(bits_atom(m.w));
      return e;
    case K::SwitchU:
      e.push_atom("sw");
      e.push(machine_sexpr(*m.a));
      e.push(evaluator_spec_sexpr(*m.ev));
      return e;
    case K::Comparator:
      e.push_atom("cmp");
      e.push(machine_sexpr(*m.a));
      e.push(machine_sexpr(*m.b));
      return e;
    case K::TmoWrapper:
      e.push_atom("tmo");
      e.push(evaluator_spec_sexpr(*m.ev));
      return e;
    case K::Goldbach:
      e.push_atom("gb");
      return e;
  }
  throw Error("machine_sexpr: bad kind");
}

inline MachinePtr machine_from_sexpr(const SExpr& e) {
  if (e.atom) throw Error("machine parse: expected list");
  const std::string& h = e.head();
  if (h == "tm") return mk_raw(machine_desc_from_sexpr(e));
  if (h == "bi") {
    if (e.size() != 2 || !e.at(1).atom) throw Error("machine parse: bad builtin");
    return mk_builtin(e.at(1).text);
  }
  if (h == "bc") {
    if (e.size() != 2) throw Error("machine parse: bad const");
    std::string b = atom_bits(e.at(1));
    if (!b.empty() && b[0] == '0') throw Error("machine parse: non-canonical const");
    if (b.size() > 63) throw Error("machine parse: const too large");
    return mk_const_nat(string_num(b));
  }
  if (h == "O") {
    if (e.size() != 3) throw Error("machine parse: bad O");
    return mk_o(machine_from_sexpr(e.at(1)), atom_bits(e.at(2)));
  }
  if (h == "Q") {
    if (e.size() != 4) throw Error("machine parse: bad Q");
    return mk_q(machine_from_sexpr(e.at(1)), machine_from_sexpr(e.at(2)), atom_bits(e.at(3)));
  }
  if (h == "P") {
    if (e.size() != 4) throw Error("machine parse: bad P");
    return mk_patch(machine_from_sexpr(e.at(1)), int(atom_nat(e.at(2))), atom_bits(e.at(3)));
  }
  if (h == "dc") {
    if (e.size() != 3) throw Error("machine parse: bad dc");
    return mk_diag_compose(machine_from_sexpr(e.at(1)), machine_from_sexpr(e.at(2)));
  }
  if (h == "fx") {
    if (e.size() != 2) throw Error("machine parse: bad fx");
    return mk_fixed_point(atom_bits(e.at(1)));
  }
  if (h == "sw") {
    if (e.size() != 3) throw Error("machine parse: bad sw");
    return mk_switch(machine_from_sexpr(e.at(1)), evaluator_spec_from_sexpr(e.at(2)));
  }
  if (h == "cmp") {
    if (e.size() != 3) throw Error("machine parse: bad cmp");
    return mk_comparator(machine_from_sexpr(e.at(1)), machine_from_sexpr(e.at(2)));
  }
  if (h == "tmo") {
    if (e.size() != 2) throw Error("machine parse: bad tmo");
    return mk_tmo(evaluator_spec_from_sexpr(e.at(1)));
  }
  if (h == "gb") {
    if (e.size() != 1) throw Error("machine parse: bad gb");
    return mk_goldbach();
  }
  throw Error("machine parse: unknown machine form " + h);
}

inline SExpr statement_sexpr(const Statement& s) {
  SExpr e = SExpr::mk_list();
  switch (s.kind) {
    case Statement::Kind::Halts:
    case Statement::Kind::NotHalts:
      e.push_atom(s.kind == Statement::Kind::Halts ? "h" : "n");
      e.push(machine_sexpr(*s.m1));
      e.push_atom(bits_atom(s.w));
      return e;
    case Statement::Kind::TimeBound:
      e.push_atom("tb");
      e.push(machine_sexpr(*s.m1));
      return poly_push(std::move(e), s.bound);
    case Statement::Kind::PointwiseEqual:
      e.push_atom("pe");
      e.push(machine_sexpr(*s.m1));
      e.push(machine_sexpr(*s.m2));
      e.push_atom(s.tag);
      return e;
  }
  throw Error("statement_sexpr: bad kind");
}

inline Statement statement_from_sexpr(const SExpr& e) {
  if (e.atom) throw Error("statement parse: expected list");
  Statement s;
  const std::string& h = e.head();
  if (h == "h" || h == "n") {
    if (e.size() != 3) throw Error("statement parse: bad halting statement");
    s.kind = h == "h" ? Statement::Kind::Halts : Statement::Kind::NotHalts;
    s.m1 = machine_from_sexpr(e.at(1));
    s.w = atom_bits(e.at(2));
    return s;
  }
  if (h == "tb") {
    if (e.size() != 5) throw Error("statement parse: bad time bound");
    s.kind = Statement::Kind::TimeBound;
    s.m1 = machine_from_sexpr(e.at(1));
    s.bound = poly_from(e, 2);
    return s;
  }
  if (h == "pe") {
    if (e.size() != 4 || !e.at(3).atom) throw Error("statement parse: bad pointwise equality");
    s.kind = Statement::Kind::PointwiseEqual;
    s.m1 = machine_from_sexpr(e.at(1));
    s.m2 = machine_from_sexpr(e.at(2));
    s.tag = e.at(3).text;
    return s;
  }
  throw Error("statement parse: unknown statement form " + h);
}

inline SExpr derivation_sexpr(const Derivation& d) {
  SExpr e = SExpr::mk_list();
  e.push_atom(d.has_value ? "dv" : "dt");
  e.push_atom(d.tag);
  e = poly_push(std::move(e), d.steps);
  if (d.has_value) e = poly_push(std::move(e), d.value);
  for (auto& c : d.children) e.push(derivation_sexpr(c));
  return e;
}

inline Derivation derivation_from_sexpr(const SExpr& e) {
  if (e.atom || e.size() < 2) throw Error("derivation parse: expected list");
  Derivation d;
  const std::string& h = e.head();
  if (h != "dt" && h != "dv") throw Error("derivation parse: unknown form");
  d.has_value = h == "dv";
  if (!e.at(1).atom) throw Error("derivation parse: bad tag");
  d.tag = e.at(1).text;
  std::size_t i = 2;
  d.steps = poly_from(e, i);
  i += 3;
  if (d.has_value) {
    d.value = poly_from(e, i);
    i += 3;
  }
  for (; i < e.size(); ++i) d.children.push_back(derivation_from_sexpr(e.at(i)));
  return d;
}

inline std::string derivation_ser(const Derivation& d) { return sexpr_print(derivation_sexpr(d)); }

inline SExpr proof_sexpr(const Proof& p) {
  SExpr e = SExpr::mk_list();
  e.push_atom("pf");
  e.push(statement_sexpr(p.subject));
  SExpr c = SExpr::mk_list();
  switch (p.kind) {
    case Proof::Kind::HaltTrace:
      c.push_atom("ht");
      c.push_atom(std::to_string(p.halt_steps));
      for (auto& cf : p.trace) c.push(config_sexpr(cf));
      break;
    case Proof::Kind::CycleCertificate:
      c.push_atom("cyc");
      c.push_atom(std::to_string(p.prefix));
      c.push_atom(std::to_string(p.cycle));
      break;
    case Proof::Kind::TimeBoundCertificate: c = derivation_sexpr(p.deriv); break;
    case Proof::Kind::EqualityCertificate:
      c.push_atom("eq");
      c.push(derivation_sexpr(p.deriv));
      break;
  }
  e.push(std::move(c));
  return e;
}

inline Proof proof_from_sexpr(const SExpr& e) {
  if (e.atom || e.size() != 3 || e.head() != "pf") throw Error("proof parse: expected (pf ...)");
  Proof p;
  p.subject = statement_from_sexpr(e.at(1));
  const SExpr& c = e.at(2);
  if (c.atom) throw Error("proof parse: bad certificate");
  const std::string& h = c.head();
  if (h == "ht") {
    if (c.size() < 3) throw Error("proof parse: bad halt trace");
    p.kind = Proof::Kind::HaltTrace;
    p.halt_steps = atom_nat(c.at(1));
    for (std::size_t i = 2; i < c.size(); ++i)
      p.trace.push_back(config_from_sexpr(c.at(i), i - 2));
    return p;
  }
  if (h == "cyc") {
    if (c.size() != 3) throw Error("proof parse: bad cycle certificate");
    p.kind = Proof::Kind::CycleCertificate;
    p.prefix = atom_nat(c.at(1));
    p.cycle = atom_nat(c.at(2));
    return p;
  }
  if (h == "dt") {
    p.kind = Proof::Kind::TimeBoundCertificate;
    p.deriv = derivation_from_sexpr(c);
    return p;
  }
  if (h == "eq") {
    if (c.size() != 2) throw Error("proof parse: bad equality certificate");
    p.kind = Proof::Kind::EqualityCertificate;
    p.deriv = derivation_from_sexpr(c.at(1));
    return p;
  }
  throw Error("proof parse: unknown certificate form " + h);
}

inline SExpr quadruplet_sexpr(const Quadruplet& q) {
  SExpr e = SExpr::mk_list();
  e.push_atom("quad");
  e.push(machine_sexpr(*q.m1));
  e.push(machine_sexpr(*q.m2));
  e.push(proof_sexpr(q.p1));
  e.push(proof_sexpr(q.p2));
  return e;
}

inline Quadruplet quadruplet_from_sexpr(const SExpr& e) {
  if (e.atom || e.size() != 5 || e.head() != "quad") throw Error("quadruplet parse: expected (quad ...)");
  Quadruplet q;
  q.m1 = machine_from_sexpr(e.at(1));
  q.m2 = machine_from_sexpr(e.at(2));
  q.p1 = proof_from_sexpr(e.at(3));
  q.p2 = proof_from_sexpr(e.at(4));
  return q;
}

inline SExpr evaluator_spec_sexpr(const EvaluatorSpec& ev) {
  SExpr e = SExpr::mk_list();
  e.push_atom("ev");
  e.push(machine_sexpr(*ev.m0));
  SExpr seeds = SExpr::mk_list();
  seeds.push_atom("seeds");
  for (auto& [n, q] : ev.seeds) {
    SExpr s = SExpr::mk_list();
    s.push_atom("sd");
    s.push_atom(std::to_string(n));
    s.push(quadruplet_sexpr(q));
    seeds.push(std::move(s));
  }
  e.push(std::move(seeds));
  return e;
}

inline EvaluatorSpecPtr evaluator_spec_from_sexpr(const SExpr& e) {
  if (e.atom || e.size() != 3 || e.head() != "ev") throw Error("evaluator parse: expected (ev ...)");
  auto ev = std::make_shared<EvaluatorSpec>();
  ev->m0 = machine_from_sexpr(e.at(1));
  const SExpr& seeds = e.at(2);
  if (seeds.atom || seeds.size() < 1 || seeds.head() != "seeds")
    throw Error("evaluator parse: bad seeds");
  for (std::size_t i = 1; i < seeds.size(); ++i) {
    const SExpr& s = seeds.at(i);
    if (s.atom || s.size() != 3 || s.head() != "sd") throw Error("evaluator parse: bad seed");
    ev->seeds.emplace(atom_nat(s.at(1)), quadruplet_from_sexpr(s.at(2)));
  }
  return ev;
}

// --- structural bound derivations ----------------------------------------

std::optional<Derivation> derive_timebound(const Machine& m);
std::optional<Derivation> derive_totality(const Machine& m);

// Step bound for the builtin cost model; value bound for nat-valued builtins.
inline std::optional<Derivation> derive_totality(const Machine& m) {
  using K = Machine::Kind;
  Derivation d;
  d.has_value = true;
  if (m.kind == K::Builtin) {
    d.tag = "bi";
    if (m.tag == "id") {
      d.steps = {0, 1, 1};
      d.value = {1, 1, 0};
    } else if (m.tag == "dbl") {
      d.steps = {1, 1, 1};
      d.value = {2, 1, 0};
    } else if (m.tag == "len") {
      d.steps = {1, 1, 1};
      d.value = {1, 1, 0};
    } else if (m.tag == "c0" || m.tag == "c1" || m.tag == "par" || m.tag == "pop" ||
               m.tag == "lenpar") {
      d.steps = {1, 1, 1};
      d.value = {0, 1, 1};
    } else {
      return std::nullopt;  // "exp" is deliberately uncertified
    }
    return d;
  }
  if (m.kind == K::ConstNat) {
    d.tag = "bc";
    d.steps = {1, 1, 1};
    d.value = {0, 1, m.cval};
    return d;
  }
  if (m.kind == K::DiagCompose) {
    auto inner = derive_totality(*m.b);
    auto outer = derive_timebound(*m.a);
    if (!inner || !outer || outer->steps.k != 1) return std::nullopt;
    d.tag = "dc";
    d.steps = poly_add(poly_add(inner->steps, poly_compose_linear(outer->steps, inner->value)),
                       Poly{0, 1, 2});
    d.value = {0, 1, 1};
    d.children = {*outer, *inner};
    return d;
  }
  return std::nullopt;
}

inline std::optional<Derivation> derive_timebound(const Machine& m) {
  using K = Machine::Kind;
  Derivation d;
  if (m.kind == K::Builtin) {
    d.tag = "bi";
    if (m.tag == "id")
      d.steps = {0, 1, 1};
    else if (m.tag == "exp")
      return std::nullopt;
    else
      d.steps = {1, 1, 1};
    return d;
  }
  if (m.kind == K::OComb) {
    d.tag = "O";
    d.steps = {2, 1, 1};
    return d;
  }
  if (m.kind == K::QComb) {
    auto fb = derive_timebound(*m.b);
    if (!fb) return std::nullopt;
    d.tag = "Q";
    d.steps = Poly{2 + fb->steps.a, std::max<std::uint64_t>(1, fb->steps.k), fb->steps.b + 2};
    d.children = {*fb};
    return d;
  }
  if (m.kind == K::PatchComb) {
    auto base = derive_timebound(*m.a);
    if (!base) return std::nullopt;
    d.tag = "P";
    d.steps = poly_add(base->steps, Poly{0, 1, 2});
    d.children = {*base};
    return d;
  }
  if (m.kind == K::DiagCompose) {
    auto tot = derive_totality(m);
    if (!tot) return std::nullopt;
    d = *tot;
    d.has_value = false;  // time-bound view of the same derivation
    return d;
  }
  return std::nullopt;
}

// Raw control skeleton for validate-style conformance of built machines.
inline int machine_node_count(const Machine& m) {
  int n = 1;
  if (m.a) n += machine_node_count(*m.a);
  if (m.b) n += machine_node_count(*m.b);
  return n;
}

inline MachineDescription control_skeleton(const Machine& m) {
  if (m.kind == Machine::Kind::Raw) return m.desc;
  return step_counter_machine(std::min(machine_node_count(m), 35));
}

// Throws if the machine (raw table or composite control skeleton) violates
// the machine-model constraints.
inline void validate_machine_any(const Machine& m) {
  MachineDescription d = control_skeleton(m);
  validate_machine_table(d.n, d.start(), d.halt(), d.rows, d.name);
}

}  // namespace indeplab
