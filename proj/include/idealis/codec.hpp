#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "idealis/core.hpp"

namespace idealis {

/// Cantor pairing k = (n+m)(n+m+1)/2 + m.
inline Natural pair_encode(Natural n, Natural m) {
  const Natural w = checked_add(n, m);
  const Natural t = (w % 2 == 0) ? checked_mul(w / 2, w + 1) : checked_mul(w, (w + 1) / 2);
  return checked_add(t, m);
}

inline std::pair<Natural, Natural> pair_decode(Natural k) {
  // w = floor((sqrt(8k+1)-1)/2), corrected for floating error.
  auto tri = [](unsigned __int128 w) { return w * (w + 1) / 2; };
  auto w = static_cast<unsigned __int128>((std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
  while (tri(w) > k) --w;
  while (tri(w + 1) <= k) ++w;
  const auto m = static_cast<Natural>(k - tri(w));
  const auto n = static_cast<Natural>(w) - m;
  return {n, m};
}

/// Length-lexicographic enumeration of finite binary strings: "", "0", "1", "00", ...
/// Code of s is 2^|s| - 1 + value(s).
inline BigNat qstring_code_big(std::string_view s) {
  BigNat v = 0;
  for (char c : s) v = v * 2 + (c == '1' ? 1 : 0);
  BigNat base = 1;
  base <<= s.size();
  return base - 1 + v;
}

inline Natural qstring_code(std::string_view s) {
  if (s.size() >= 63) fail(ErrorKind::Presentation, "string too long for a 64-bit code");
  Natural v = 0;
  for (char c : s) v = v * 2 + (c == '1' ? 1 : 0);
  return ((Natural{1} << s.size()) - 1) + v;
}

inline std::string qstring_decode(Natural code) {
  // code + 1 written in binary without its leading 1.
  const unsigned __int128 x = static_cast<unsigned __int128>(code) + 1;
  int len = 0;
  while ((x >> (len + 1)) != 0) ++len;
  std::string s(static_cast<std::size_t>(len), '0');
  for (int i = 0; i < len; ++i) {
    if ((x >> (len - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

inline std::string qstring_decode_big(const BigNat& code) {
  BigNat x = code + 1;
  const auto bits = static_cast<std::size_t>(boost::multiprecision::msb(x));
  std::string s(bits, '0');
  for (std::size_t i = 0; i < bits; ++i) {
    if (boost::multiprecision::bit_test(x, static_cast<unsigned>(bits - 1 - i))) s[i] = '1';
  }
  return s;
}

inline bool is_binary_word(std::string_view s) {
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

/// Length-lexicographic order, consistent with qstring_code.
inline bool qstring_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace idealis
