#pragma once

// Monte Carlo estimates of l-adic measures of congruence conditions on
// W(Z_l), sampling (a, b) uniformly modulo l^N.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ecstat/density.hpp"
#include "ecstat/error.hpp"
#include "ecstat/numtheory.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

/// A condition on (a, b) that depends only on residues modulo ell^level.
struct LocalPredicate {
  std::string name;
  u64 ell = 0;
  unsigned level = 1;
  std::function<bool(u64 a, u64 b)> test;  // residues in [0, ell^level)
  std::optional<Rational> exact_measure;
};

struct MonteCarloEstimate {
  std::string name;
  u64 samples = 0;
  u64 hits = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<Rational> exact_measure;

  /// |estimate - exact| <= k * sigma (requires an exact measure).
  bool within_sigmas(double k) const {
    const double truth = exact_measure.value().to_double();
    return std::abs(estimate - truth) <= k * std_error;
  }
};

namespace detail {

inline u64 checked_modulus(u64 ell, unsigned level) {
  if (level < 1) throw Error(ErrorCode::InvalidArgument, "level must be >= 1");
  u128 m = 1;
  for (unsigned i = 0; i < level; ++i) {
    m *= ell;
    if (m >= (u128{1} << 62)) throw Error(ErrorCode::InvalidArgument, "ell^level too large");
  }
  return static_cast<u64>(m);
}

inline unsigned valuation_capped(u64 v, u64 ell, unsigned cap) {
  unsigned k = 0;
  while (k < cap && v % ell == 0) {
    v /= ell;
    ++k;
  }
  return k;
}

inline u64 delta_mod(u64 a, u64 b, u64 m) {
  const u64 a3 = mulmod(mulmod(a, a, m), a, m);
  return (mulmod(4 % m, a3, m) + mulmod(27 % m, mulmod(b, b, m), m)) % m;
}

inline constexpr u64 kSampleBlock = 1 << 16;

}  // namespace detail

namespace predicates {

inline LocalPredicate always(u64 ell) {
  return {"always", ell, 1, [](u64, u64) { return true; }, Rational(1)};
}

/// v(a) >= v1 and v(b) >= v2.
inline LocalPredicate in_Wv(u64 ell, unsigned v1, unsigned v2) {
  const unsigned level = std::max({1U, v1, v2});
  const u64 m1 = detail::checked_modulus(ell, std::max(1U, v1)), m2 = detail::checked_modulus(ell, std::max(1U, v2));
  return {"W(" + std::to_string(v1) + "," + std::to_string(v2) + ")@" + std::to_string(ell), ell, level,
          [=](u64 a, u64 b) { return (v1 == 0 || a % m1 == 0) && (v2 == 0 || b % m2 == 0); }, measure_Wv(ell, v1, v2)};
}

/// Type I_n (n >= 1): (a, b) != (0, 0) mod l and v(Delta) = n, read modulo l^(n+1).
inline LocalPredicate kodaira_In(u64 ell, unsigned n) {
  const u64 m = detail::checked_modulus(ell, n + 1);
  return {"I" + std::to_string(n) + "@" + std::to_string(ell), ell, n + 1,
          [=](u64 a, u64 b) {
            if (a % ell == 0 && b % ell == 0) return false;
            return detail::valuation_capped(detail::delta_mod(a, b, m), ell, n + 1) == n;
          },
          rho_In(ell, n)};
}

/// Type I_m for some m >= n: (a, b) != (0, 0) mod l and l^n | Delta.
inline LocalPredicate kodaira_Igeq(u64 ell, unsigned n) {
  const u64 m = detail::checked_modulus(ell, n);
  return {"I>=" + std::to_string(n) + "@" + std::to_string(ell), ell, n,
          [=](u64 a, u64 b) {
            if (a % ell == 0 && b % ell == 0) return false;
            return detail::delta_mod(a, b, m) == 0;
          },
          rho_Igeq(ell, n)};
}

/// Good reduction: Delta != 0 mod l.
inline LocalPredicate kodaira_I0(u64 ell) {
  return {"I0@" + std::to_string(ell), ell, 1, [=](u64 a, u64 b) { return detail::delta_mod(a, b, ell) != 0; },
          rho_I0(ell)};
}

}  // namespace predicates

/// Uniform sampling of (a, b) mod ell^level. Samples are drawn in fixed blocks,
/// each from its own generator seeded by (seed, block index), so the estimate
/// depends on (predicate, samples, seed) only and not on `threads`.
inline MonteCarloEstimate montecarlo_local_measure(const LocalPredicate& pred, u64 samples, u64 seed, unsigned threads = 1) {
  if (samples < 1000) throw Error(ErrorCode::InvalidArgument, "need at least 1000 samples");
  if (!pred.test) throw Error(ErrorCode::InvalidArgument, "predicate has no test");
  const u64 modulus = detail::checked_modulus(pred.ell, pred.level);
  const u64 blocks = (samples + detail::kSampleBlock - 1) / detail::kSampleBlock;
  std::vector<u64> block_hits(blocks, 0);

  auto run_block = [&](u64 blk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_int_distribution<u64> dist(0, modulus - 1);
    const u64 begin = blk * detail::kSampleBlock;
    const u64 end = std::min(samples, begin + detail::kSampleBlock);
    u64 hits = 0;
    for (u64 i = begin; i < end; ++i) {
      const u64 a = dist(gen);
      const u64 b = dist(gen);
      if (pred.test(a, b)) ++hits;
    }
    block_hits[blk] = hits;
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (u64 blk = 0; blk < blocks; ++blk) run_block(blk);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) {
      pool.emplace_back([&, id] {
        for (u64 blk = id; blk < blocks; blk += workers) run_block(blk);
      });
    }
    for (auto& t : pool) t.join();
  }

  MonteCarloEstimate out;
  out.name = pred.name;
  out.samples = samples;
  for (u64 h : block_hits) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  out.exact_measure = pred.exact_measure;
  return out;
}

}  // namespace ecstat
