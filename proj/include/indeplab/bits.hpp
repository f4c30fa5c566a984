#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace indeplab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_bits(std::string_view s) {
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

// num(s): positional value of a bit string, empty string -> 0.
inline std::uint64_t string_num(std::string_view s) {
  if (!is_bits(s)) throw Error("string_num: not a binary string: " + std::string(s));
  if (s.size() > 64) throw Error("string_num: string longer than 64 bits");
  std::uint64_t v = 0;
  for (char c : s) v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  return v;
}

// Minimal binary representation; 0 -> "" (num("") == 0).
inline std::string nat_to_bits(std::uint64_t n) {
  if (n == 0) return "";
  std::string s;
  while (n > 0) {
    s.push_back(char('0' + (n & 1)));
    n >>= 1;
  }
  return std::string(s.rbegin(), s.rend());
}

inline std::string zeros(std::size_t n) { return std::string(n, '0'); }

// All binary strings of exactly length n, in lexicographic order.
inline std::vector<std::string> strings_of_length(int n) {
  std::vector<std::string> out;
  if (n < 0) return out;
  if (n > 24) throw Error("strings_of_length: length too large for enumeration");
  out.reserve(std::size_t(1) << n);
  std::string cur(std::size_t(n), '0');
  for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
    for (int i = 0; i < n; ++i)
      cur[std::size_t(i)] = char('0' + ((v >> (n - 1 - i)) & 1));
    out.push_back(cur);
  }
  return out;
}

// All strings of length <= maxlen in length-lexicographic order.
inline std::vector<std::string> strings_up_to(int maxlen) {
  std::vector<std::string> out;
  for (int n = 0; n <= maxlen; ++n)
    for (auto& s : strings_of_length(n)) out.push_back(std::move(s));
  return out;
}

}  // namespace indeplab
