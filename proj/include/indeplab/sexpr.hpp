#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "indeplab/bits.hpp"

namespace indeplab {

// Minimal s-expression: atoms are any run of characters except space and
// parentheses. Canonical printing uses single spaces, so print(parse(x)) is
// the identity on canonical text.
struct SExpr {
  bool atom = true;
  std::string text;
  std::vector<SExpr> items;

  static SExpr mk_atom(std::string t) {
    SExpr e;
    e.atom = true;
    e.text = std::move(t);
    return e;
  }
  static SExpr mk_list(std::vector<SExpr> xs = {}) {
    SExpr e;
    e.atom = false;
    e.items = std::move(xs);
    return e;
  }
  void push(SExpr x) { items.push_back(std::move(x)); }
  void push_atom(std::string t) { items.push_back(mk_atom(std::move(t))); }

  const SExpr& at(std::size_t i) const {
    if (atom || i >= items.size()) throw Error("sexpr: bad index");
    return items[i];
  }
  std::size_t size() const { return atom ? 0 : items.size(); }
  const std::string& head() const {
    if (atom || items.empty() || !items[0].atom) throw Error("sexpr: no head");
    return items[0].text;
  }
};

inline void sexpr_print(const SExpr& e, std::string& out) {
  if (e.atom) {
    out += e.text;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    sexpr_print(e.items[i], out);
  }
  out += ')';
}

inline std::string sexpr_print(const SExpr& e) {
  std::string out;
  sexpr_print(e, out);
  return out;
}

namespace detail {
inline SExpr sexpr_parse_at(std::string_view s, std::size_t& i) {
  while (i < s.size() && s[i] == ' ') ++i;
  if (i >= s.size()) throw Error("sexpr: unexpected end of input");
  if (s[i] == '(') {
    ++i;
    SExpr e = SExpr::mk_list();
    while (true) {
      while (i < s.size() && s[i] == ' ') ++i;
      if (i >= s.size()) throw Error("sexpr: unterminated list");
      if (s[i] == ')') {
        ++i;
        return e;
      }
      e.items.push_back(sexpr_parse_at(s, i));
    }
  }
  if (s[i] == ')') throw Error("sexpr: unexpected ')'");
  std::size_t j = i;
  while (j < s.size() && s[j] != ' ' && s[j] != '(' && s[j] != ')') ++j;
  SExpr e = SExpr::mk_atom(std::string(s.substr(i, j - i)));
  i = j;
  return e;
}
}  // namespace detail

inline SExpr sexpr_parse(std::string_view s) {
  std::size_t i = 0;
  SExpr e = detail::sexpr_parse_at(s, i);
  while (i < s.size() && s[i] == ' ') ++i;
  if (i != s.size()) throw Error("sexpr: trailing input");
  return e;
}

// Bit strings are serialized as '#' + bits so the empty string stays a token.
inline std::string bits_atom(std::string_view bits) { return "#" + std::string(bits); }

inline std::string atom_bits(const SExpr& e) {
  if (!e.atom || e.text.empty() || e.text[0] != '#') throw Error("sexpr: expected bit atom");
  std::string b = e.text.substr(1);
  if (!is_bits(b)) throw Error("sexpr: malformed bit atom");
  return b;
}

inline std::uint64_t atom_nat(const SExpr& e) {
  if (!e.atom || e.text.empty()) throw Error("sexpr: expected number");
  std::uint64_t v = 0;
  for (char c : e.text) {
    if (c < '0' || c > '9') throw Error("sexpr: expected number, got " + e.text);
    v = v * 10 + std::uint64_t(c - '0');
  }
  // Reject non-canonical numerals so serialization stays injective.
  if (e.text.size() > 1 && e.text[0] == '0') throw Error("sexpr: non-canonical number");
  if (e.text.size() > 19) throw Error("sexpr: number too large");
  return v;
}

}  // namespace indeplab
