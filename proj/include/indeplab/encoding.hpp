#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "indeplab/theory.hpp"

namespace indeplab {

using BigNat = boost::multiprecision::cpp_int;

// Codes are the base-256 value of 0x01 followed by the canonical quadruplet
// serialization; the 0x01 sentinel keeps leading bytes significant, makes the
// map injective, and leaves every value below 256 (including 0) a non-code.
inline BigNat encode_bytes(const std::string& ser) {
  BigNat n = 1;
  for (unsigned char c : ser) {
    n <<= 8;
    n += c;
  }
  return n;
}

// Does not check the embedded proofs; the checked front door lives with the
// diagonal apparatus.
inline BigNat t_encode_unchecked(const Quadruplet& q) { return encode_bytes(quadruplet_ser(q)); }

inline std::optional<Quadruplet> t_decode(const BigNat& n) {
  if (n < 256) return std::nullopt;
  std::vector<unsigned char> bytes;
  for (BigNat v = n; v > 0; v >>= 8) bytes.push_back(static_cast<unsigned char>(v & 0xff));
  if (bytes.back() != 0x01) return std::nullopt;
  std::string ser(bytes.rbegin() + 1, bytes.rend());
  try {
    Quadruplet q = quadruplet_from_sexpr(sexpr_parse(ser));
    if (quadruplet_ser(q) != ser) return std::nullopt;
    return q;
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline std::optional<Quadruplet> t_decode(std::uint64_t n) { return t_decode(BigNat(n)); }

}  // namespace indeplab
