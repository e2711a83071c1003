#pragma once

// Machine-word number theory: modular arithmetic, primality, sieving and
// factorisation of 64-bit integers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace ecstat {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo a prime m; a must be nonzero mod m.
inline u64 invmod_prime(u64 a, u64 m) { return powmod(a, m - 2, m); }

/// Reduces a signed value into [0, m).
inline u64 reduce_signed(std::int64_t v, u64 m) {
  const auto sm = static_cast<std::int64_t>(m);
  std::int64_t r = v % sm;
  if (r < 0) r += sm;
  return static_cast<u64>(r);
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline u64 icbrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_cbrtl(static_cast<long double>(n)));
  auto cube = [](u64 v) { return static_cast<u128>(v) * v * v; };
  while (r > 0 && cube(r) > n) --r;
  while (cube(r + 1) <= n) ++r;
  return r;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// All primes <= limit (sieve of Eratosthenes).
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace detail {

inline u64 pollard_brent(u64 n, u64 seed) {
  if (n % 2 == 0) return 2;
  u64 y = seed % n, c = (seed * 2654435761ULL + 1) % n, m = 128;
  if (c == 0) c = 1;
  u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
  auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline void factor_rec(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 seed = 2;; ++seed) {
    u64 d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_rec(d, out);
      factor_rec(n / d, out);
      return;
    }
  }
}

inline const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = primes_up_to(1 << 12);
  return primes;
}

}  // namespace detail

/// Prime factorisation of n >= 1 as (prime -> exponent). Trial division by the
/// primes below 4096, then Miller-Rabin and Pollard-Brent on the cofactor.
inline std::map<u64, unsigned> factor(u64 n) {
  std::map<u64, unsigned> out;
  if (n <= 1) return out;
  for (u64 p : detail::small_primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out[p] = e;
  }
  detail::factor_rec(n, out);
  return out;
}

/// Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}.
inline int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace ecstat
