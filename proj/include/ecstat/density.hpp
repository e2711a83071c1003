#pragma once

// Closed-form local densities of minimal short Weierstrass models and
// rigorous enclosures of Euler-type products over all primes.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>

#include "ecstat/error.hpp"
#include "ecstat/numtheory.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

inline constexpr u64 kDefaultZeta10Truncation = 1000;

namespace detail {

inline void require_prime(u64 ell) {
  if (!is_prime(ell)) throw Error(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
}

inline void require_prime_ge5(u64 ell) {
  require_prime(ell);
  if (ell < 5) throw Error(ErrorCode::PrimeTooSmall, "need l >= 5");
}

inline void require_positive_index(long n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 1");
}

}  // namespace detail

/// Measure of minimal pairs in W(Z_l): 1 - l^-10.
inline Rational rho_M(u64 ell) {
  detail::require_prime(ell);
  return Rational(1) - Rational(ell).pow(-10);
}

/// Minimal pairs with good reduction: 1 - 1/l.
inline Rational rho_I0(u64 ell) {
  detail::require_prime_ge5(ell);
  return Rational(1) - Rational(ell).reciprocal();
}

/// Minimal pairs of type I_n: (l-1)^2 / l^(n+2).
inline Rational rho_In(u64 ell, long n) {
  detail::require_prime_ge5(ell);
  detail::require_positive_index(n);
  const Integer lm1(ell - 1);
  return Rational(lm1 * lm1, ipow(ell, static_cast<unsigned long>(n + 2)));
}

/// Minimal pairs of type I_m for some m >= n: (l-1) / l^(n+1).
inline Rational rho_Igeq(u64 ell, long n) {
  detail::require_prime_ge5(ell);
  detail::require_positive_index(n);
  return Rational(Integer(ell - 1), ipow(ell, static_cast<unsigned long>(n + 1)));
}

/// mu{(a,b) : v(a) >= v1, v(b) >= v2} = l^(-v1-v2).
inline Rational measure_Wv(u64 ell, unsigned v1, unsigned v2) {
  detail::require_prime(ell);
  return Rational(Integer(1), ipow(ell, v1 + v2));
}

/// Condition imposed at every prime outside an explicit finite set. The
/// complement of the condition must satisfy 1 - measure(l) <= constant * l^-decay.
struct CofiniteCondition {
  std::function<Rational(u64)> measure;
  unsigned decay_exponent = 10;
  Rational decay_constant = 1;

  static CofiniteCondition minimal() { return {[](u64 ell) { return rho_M(ell); }, 10, Rational(1)}; }
};

/// Local datum: explicit measures mu(U_l) on a finite set of primes, optional
/// cofinite condition on all others, and primes left unconstrained.
struct CongruenceDatum {
  std::map<u64, Rational> local;
  std::optional<CofiniteCondition> elsewhere;
  std::set<u64> unconstrained;

  static CongruenceDatum minimal_everywhere() { return {{}, CofiniteCondition::minimal(), {}}; }

  CongruenceDatum& with(u64 ell, Rational measure) {
    detail::require_prime(ell);
    if (measure < Rational(0) || Rational(1) < measure) {
      throw Error(ErrorCode::InvalidArgument, "local measure must lie in [0, 1]");
    }
    local[ell] = std::move(measure);
    return *this;
  }
};

/// sum_{m > L} m^-s <= integral_L^inf t^-s dt = L^(1-s) / (s-1), for s >= 2.
inline Rational integral_tail(u64 L, unsigned s) {
  return Rational(Integer(1), ipow(L, s - 1) * Integer(s - 1));
}

/// Enclosure of prod_l mu(U_l): exact product over the explicit primes and the
/// cofinite primes <= L, times a lower bound 1 - sum_{l > L} eps_l for the rest.
inline QInterval datum_density(const CongruenceDatum& datum, u64 L) {
  Rational product = 1;
  for (const auto& [ell, m] : datum.local) product *= m;
  if (!datum.elsewhere) return QInterval(product);

  const auto& cond = *datum.elsewhere;
  if (cond.decay_exponent < 2) throw Error(ErrorCode::InvalidArgument, "cofinite decay exponent must be >= 2");
  if (L < 2) throw Error(ErrorCode::TruncationTooSmall, "need L >= 2");
  for (u64 ell : primes_up_to(L)) {
    if (datum.local.contains(ell) || datum.unconstrained.contains(ell)) continue;
    product *= cond.measure(ell);
  }
  const Rational tail = cond.decay_constant * integral_tail(L, cond.decay_exponent);
  if (!(tail < Rational(1))) throw Error(ErrorCode::TruncationTooSmall, "tail bound is vacuous at L = " + std::to_string(L));
  return {product * (Rational(1) - tail), product};
}

/// 1/zeta(10) = prod_l (1 - l^-10).
inline QInterval reciprocal_zeta10(u64 L = kDefaultZeta10Truncation) {
  return datum_density(CongruenceDatum::minimal_everywhere(), L);
}

/// Density of minimal models of type I_n at every l in sigma (a finite set of
/// primes >= 5) and minimal elsewhere.
inline QInterval sigma_n_density(std::span<const u64> sigma, long n, u64 L = kDefaultZeta10Truncation) {
  auto datum = CongruenceDatum::minimal_everywhere();
  for (u64 ell : sigma) datum.with(ell, rho_In(ell, n));
  return datum_density(datum, L);
}

}  // namespace ecstat
