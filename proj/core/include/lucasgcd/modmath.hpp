#pragma once

#include <cstdint>
#include <numeric>

#include "lucasgcd/errors.hpp"

namespace lucasgcd {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Modulus cap for the routines below: with m <= 2^62 every operand stays
// below 2^62, so products fit the 128-bit intermediate and a+b never wraps.
inline constexpr u64 max_modulus = u64(1) << 62;

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// lcm with an explicit cap so rank/ell accumulation can never overflow
// silently; ell(m) <= 2 m^2 keeps desk-scale inputs far from the cap.
inline i64 lcm_checked(i64 a, i64 b) {
  i64 d = std::gcd(a, b);
  i128 l = (i128)(a / d) * b;
  if (l > (i128)max_modulus) fail(errc::out_of_range, "lcm exceeds 2^62");
  return (i64)l;
}

}  // namespace lucasgcd
