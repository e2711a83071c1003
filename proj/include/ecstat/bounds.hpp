#pragma once

// Certified lower bounds for densities of curves whose Tamagawa numbers and
// reduction at p force p-divisibility (Euler characteristic, generator count
// of the dual Selmer group, mu + lambda).

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecstat/density.hpp"
#include "ecstat/error.hpp"
#include "ecstat/ffcurve.hpp"
#include "ecstat/numtheory.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

inline u64 default_truncation(u64 p) { return 10 * p + 100; }

namespace detail {

inline void require_truncation(u64 L) {
  if (L < 11) throw Error(ErrorCode::TruncationTooSmall, "need L >= 11");
}

inline bool admissible_factor_prime(u64 ell, u64 p) { return ell >= 5 && ell != p; }

}  // namespace detail

/// f(l) = l^8 (l-1)^2 / ((l^10 - 1)(l^p - 1)): the measure, renormalised by
/// minimality, of pairs of type I_{jp} at l for some j >= 1.
inline Rational bound_factor(u64 ell, u64 p) {
  detail::require_prime_ge5(p);
  if (!is_prime(ell)) throw Error(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  if (!detail::admissible_factor_prime(ell, p)) throw Error(ErrorCode::ExcludedPrime, "l must avoid {2, 3, p}");
  const Integer lm1(ell - 1);
  return Rational(ipow(ell, 8) * lm1 * lm1, (ipow(ell, 10) - 1) * (ipow(ell, p) - 1));
}

/// Enclosures of e_0, ..., e_{n_max} of the factors f(l) over all admissible
/// primes. Lower endpoints use primes <= L only; upper endpoints add
/// sum_k e_{n-k}(<= L) T^k / k! with T = L^(2-p)/(p-2) >= sum_{l > L} l^(1-p) > sum f(l).
inline std::vector<QInterval> symmetric_sums(long n_max, u64 p, u64 L) {
  detail::require_prime_ge5(p);
  detail::require_truncation(L);
  if (n_max < 0) return {};
  std::vector<Rational> e(static_cast<size_t>(n_max + 1), Rational(0));
  e[0] = 1;
  for (u64 ell : primes_up_to(L)) {
    if (!detail::admissible_factor_prime(ell, p)) continue;
    const Rational f = bound_factor(ell, p);
    for (long j = n_max; j >= 1; --j) e[j] += f * e[j - 1];
  }
  const Rational tail = Rational(Integer(1), ipow(L, p - 2) * Integer(p - 2));
  std::vector<QInterval> out;
  out.reserve(e.size());
  for (long n = 0; n <= n_max; ++n) {
    Rational hi = 0, power = 1, factorial = 1;
    for (long k = 0; k <= n; ++k) {
      if (k > 0) {
        power *= tail;
        factorial *= Rational(k);
      }
      hi += e[n - k] * power / factorial;
    }
    out.emplace_back(e[n], hi);
  }
  return out;
}

/// e_n with the conventions e_0 = 1 and e_n = 0 for n < 0.
inline QInterval sym_sum_e(long n, u64 p, u64 L) {
  detail::require_truncation(L);
  if (n < 0) return QInterval(Rational(0));
  if (n == 0) return QInterval(Rational(1));
  return symmetric_sums(n, p, L)[static_cast<size_t>(n)];
}

/// 1/zeta(s) enclosed via sum_{m<=N} m^-s <= zeta(s) <= sum_{m<=N} m^-s + N^(1-s)/(s-1).
inline QInterval zeta_recip_lower(unsigned s, u64 N) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "need s >= 2");
  if (N < 10) throw Error(ErrorCode::TruncationTooSmall, "need N >= 10");
  // Common denominator lcm(1..N)^s keeps the partial sum a single big-integer sum.
  Integer base = 1;
  for (u64 m = 2; m <= N; ++m) mpz_lcm_ui(base.get_mpz_t(), base.get_mpz_t(), m);
  const Integer denom = ipow(base, s);
  Integer numer = 0;
  for (u64 m = 1; m <= N; ++m) numer += ipow(Integer(base / m), s);
  const Rational partial(numer, denom);
  const Rational upper = partial + integral_tail(N, s);
  return {upper.reciprocal(), partial.reciprocal()};
}

// Which bound a report carries. The printed tags are fixed by the report format.
enum class BoundKind { EulerCharacteristic, SelmerGenerators, MuPlusLambda, ClassSet, ClassSetPrime };

constexpr std::string_view to_string(BoundKind t) {
  switch (t) {
    case BoundKind::EulerCharacteristic: return "Thm53";
    case BoundKind::SelmerGenerators: return "Thm64";
    case BoundKind::MuPlusLambda: return "Cor65";
    case BoundKind::ClassSet: return "Lemma52";
    case BoundKind::ClassSetPrime: return "Lemma52prime";
  }
  return "?";
}

struct BoundParams {
  u64 p = 0;
  long n = 0;
  u64 L = 0;
  std::optional<long> k;
};

struct BoundTerms {
  QInterval zeta_recip;
  QInterval e_n;
  QInterval e_aux;
  long aux_index = 0;
  Rational S_p;
  Rational S_p_prime;
};

/// value.lo is the certified lower bound.
struct BoundReport {
  BoundParams params;
  BoundKind theorem = BoundKind::SelmerGenerators;
  QInterval value;
  BoundTerms terms;
  std::vector<std::string> notes;
};

/// p^8 #S / (p^10 - 1).
inline Rational normalised_class_measure(u64 p, u64 count) {
  return Rational(ipow(p, 8) * Integer(count), ipow(p, 10) - 1);
}

namespace detail {

inline BoundReport assemble_bound(BoundKind tag, u64 p, long n, long aux, u64 L, const FrakSCounts& counts) {
  require_prime_ge5(p);
  require_truncation(L);
  if (L < p + 2) throw Error(ErrorCode::TruncationTooSmall, "need L >= p + 2");
  if (counts.p != p) throw Error(ErrorCode::InvalidArgument, "class counts computed for a different prime");

  BoundReport r;
  r.params = {p, n, L, std::nullopt};
  r.theorem = tag;
  const long top = std::max(n, aux);
  const auto sums = top >= 1 ? symmetric_sums(top, p, L) : std::vector<QInterval>{QInterval(Rational(1))};
  auto pick = [&](long i) { return i < 0 ? QInterval(Rational(0)) : sums[static_cast<size_t>(i)]; };
  r.terms.zeta_recip = zeta_recip_lower(static_cast<unsigned>(p), L);
  r.terms.e_n = pick(n);
  r.terms.e_aux = pick(aux);
  r.terms.aux_index = aux;
  r.terms.S_p = normalised_class_measure(p, counts.count_S);
  r.terms.S_p_prime = normalised_class_measure(p, counts.count_Sprime);
  r.value = r.terms.zeta_recip * (r.terms.e_n * r.terms.S_p + r.terms.e_aux * r.terms.S_p_prime);
  return r;
}

}  // namespace detail

/// Lower bound for the density of curves (good ordinary at p) with p^n | chi_t:
/// (1/zeta(p)) (e_n S_p + e_{n-2} S'_p).
inline BoundReport lower_bound_chi(u64 p, long n, u64 L, const FrakSCounts& counts) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 0");
  auto r = detail::assemble_bound(BoundKind::EulerCharacteristic, p, n, n - 2, L, counts);
  if (n == 0) r.notes.emplace_back("n = 0: bound reduces to the non-anomalous ordinary class measure");
  return r;
}

inline BoundReport lower_bound_chi(u64 p, long n, u64 L) { return lower_bound_chi(p, n, L, frak_S_counts(p)); }

/// Lower bound for the density of curves (good ordinary at p) whose dual
/// Selmer group over the cyclotomic Z_p-extension needs >= n generators:
/// (1/zeta(p)) (e_n S_p + e_{n-1} S'_p).
inline BoundReport lower_bound_g(u64 p, long n, u64 L, const FrakSCounts& counts) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 1");
  return detail::assemble_bound(BoundKind::SelmerGenerators, p, n, n - 1, L, counts);
}

inline BoundReport lower_bound_g(u64 p, long n, u64 L) { return lower_bound_g(p, n, L, frak_S_counts(p)); }

/// mu + lambda >= g, so the same bound applies.
inline BoundReport lower_bound_mu_lambda(u64 p, long n, u64 L, const FrakSCounts& counts) {
  auto r = lower_bound_g(p, n, L, counts);
  r.theorem = BoundKind::MuPlusLambda;
  return r;
}

inline BoundReport lower_bound_mu_lambda(u64 p, long n, u64 L) {
  return lower_bound_mu_lambda(p, n, L, frak_S_counts(p));
}

/// Density of the congruence set for a finite set sigma of primes with
/// Kodaira type I_{jp} (1 <= j <= k) on sigma, no I_{>=p} elsewhere
/// (outside {2, 3, p}) and the residue class at p drawn from S_p (or S'_p),
/// together with a closed-form lower bound for it.
struct ClassDensity {
  QInterval density;
  QInterval closed_form_bound;
};

namespace detail {

inline ClassDensity class_density(std::span<const u64> sigma, long k, u64 p, u64 L, u64 class_count) {
  require_prime_ge5(p);
  require_truncation(L);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "need k >= 1");
  for (u64 ell : sigma) {
    require_prime_ge5(ell);
    if (ell == p) throw Error(ErrorCode::ExcludedPrime, "sigma must not contain p");
  }

  CongruenceDatum datum;
  datum.unconstrained = {2, 3};
  const Integer pp(p);
  datum.with(p, Rational(Integer(class_count), pp * pp));
  Rational sigma_product = 1;
  for (u64 ell : sigma) {
    Rational local = 0, renormalised = 0;
    const Integer lm1(ell - 1);
    for (long j = 1; j <= k; ++j) {
      const auto jp = static_cast<long>(j * static_cast<long>(p));
      local += Rational(lm1 * lm1, ipow(ell, static_cast<unsigned long>(jp + 2)));
      renormalised += Rational(lm1 * lm1, ipow(ell, 10) - 1) * Rational(ell).pow(8 - jp);
    }
    datum.with(ell, local);
    sigma_product *= renormalised;
  }
  // 1 - l^-10 - (l-1)/l^(p+1): complement <= l^-10 + l^-p <= 2 l^-min(10, p).
  datum.elsewhere = CofiniteCondition{
      [p](u64 ell) {
        return Rational(1) - Rational(ell).pow(-10) - Rational(Integer(ell - 1), ipow(ell, p + 1));
      },
      static_cast<unsigned>(std::min<u64>(10, p)), Rational(2)};

  const QInterval zeta10 = reciprocal_zeta10(L).reciprocal();
  ClassDensity out;
  out.density = zeta10 * datum_density(datum, L);
  out.closed_form_bound = zeta_recip_lower(static_cast<unsigned>(p), L) * (sigma_product * normalised_class_measure(p, class_count));
  return out;
}

}  // namespace detail

inline ClassDensity density_E_sigma_k(std::span<const u64> sigma, long k, u64 p, u64 L, const FrakSCounts& counts) {
  return detail::class_density(sigma, k, p, L, counts.count_S);
}

inline ClassDensity density_E_sigma_k_prime(std::span<const u64> sigma, long k, u64 p, u64 L, const FrakSCounts& counts) {
  return detail::class_density(sigma, k, p, L, counts.count_Sprime);
}

inline ClassDensity density_E_sigma_k(std::span<const u64> sigma, long k, u64 p, u64 L) {
  return density_E_sigma_k(sigma, k, p, L, frak_S_counts(p));
}

inline ClassDensity density_E_sigma_k_prime(std::span<const u64> sigma, long k, u64 p, u64 L) {
  return density_E_sigma_k_prime(sigma, k, p, L, frak_S_counts(p));
}

}  // namespace ecstat
