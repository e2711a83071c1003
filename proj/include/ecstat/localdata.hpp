#pragma once

// Local arithmetic of integral short Weierstrass pairs (a, b): height,
// valuations, minimality, and reduction type at primes l >= 5.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecstat/error.hpp"
#include "ecstat/ffcurve.hpp"
#include "ecstat/numtheory.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

/// Y^2 = X^3 + aX + b over Q.
struct WeierstrassPair {
  Integer a;
  Integer b;
};

inline Integer discriminant(const WeierstrassPair& e) { return 4 * e.a * e.a * e.a + 27 * e.b * e.b; }

/// max(4|a|^3, 27 b^2).
inline Integer naive_height(const WeierstrassPair& e) {
  const Integer abs_a = abs(e.a);
  const Integer ha = 4 * abs_a * abs_a * abs_a;
  const Integer hb = 27 * e.b * e.b;
  return ha > hb ? ha : hb;
}

/// l-adic valuation; v(0) is +infinity.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  static Valuation finite(unsigned v) { return Valuation(v); }

  bool is_infinite() const { return !value_.has_value(); }
  unsigned value() const {
    if (!value_) throw Error(ErrorCode::InvalidArgument, "infinite valuation has no finite value");
    return *value_;
  }
  bool at_least(unsigned k) const { return !value_ || *value_ >= k; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

  std::string str() const { return value_ ? std::to_string(*value_) : "inf"; }

 private:
  Valuation() = default;
  explicit Valuation(unsigned v) : value_(v) {}
  std::optional<unsigned> value_;
};

inline Valuation valuation(const Integer& n, u64 ell) {
  if (ell < 2) throw Error(ErrorCode::NotPrime, "valuation needs a prime");
  if (n == 0) return Valuation::infinity();
  Integer rest;
  const Integer prime(ell);
  const auto v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
  return Valuation::finite(static_cast<unsigned>(v));
}

inline u64 residue(const Integer& n, u64 m) { return mpz_fdiv_ui(n.get_mpz_t(), m); }

/// Minimal at l unless v(a) >= 4 and v(b) >= 6.
inline bool is_minimal_at(const WeierstrassPair& e, u64 ell) {
  return !(valuation(e.a, ell).at_least(4) && valuation(e.b, ell).at_least(6));
}

inline void require_nonsingular(const WeierstrassPair& e) {
  if (discriminant(e) == 0) throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0");
}

/// True iff no prime l has l^4 | a and l^6 | b (gcd(a^3, b^2) is 12th-power free).
/// Candidate primes divide gcd(a, b); that gcd is factored after trial division.
inline bool is_globally_minimal(const WeierstrassPair& e) {
  require_nonsingular(e);
  Integer g = gcd(e.a, e.b);
  for (u64 ell : primes_up_to(1000)) {
    if (mpz_divisible_ui_p(g.get_mpz_t(), ell) == 0) continue;
    if (!is_minimal_at(e, ell)) return false;
    Integer prime(ell);
    mpz_remove(g.get_mpz_t(), g.get_mpz_t(), prime.get_mpz_t());
  }
  if (g == 1) return true;
  if (!g.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "gcd(a, b) cofactor too large to factor");
  for (const auto& [ell, exp] : factor(g.get_ui())) {
    if (!is_minimal_at(e, ell)) return false;
  }
  return true;
}

enum class KodairaKind { Good, Mult, Additive };

/// Reduction type at a prime l >= 5: I_0, I_n (n >= 1), or additive (all
/// additive Kodaira symbols collapsed).
struct KodairaClass {
  KodairaKind kind = KodairaKind::Good;
  unsigned n = 0;  // v_l(Delta) for Mult, 0 otherwise
  u64 ell = 0;

  friend bool operator==(const KodairaClass&, const KodairaClass&) = default;

  std::string str() const {
    switch (kind) {
      case KodairaKind::Good: return "I0";
      case KodairaKind::Mult: return "I" + std::to_string(n);
      case KodairaKind::Additive: return "Add";
    }
    return "?";
  }
};

inline void require_local_prime(u64 ell) {
  if (!is_prime(ell)) throw Error(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  if (ell < 5) throw Error(ErrorCode::PrimeTooSmall, "local classification needs l >= 5");
}

inline KodairaClass kodaira_at(const WeierstrassPair& e, u64 ell) {
  require_local_prime(ell);
  const Integer delta = discriminant(e);
  if (delta == 0) throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0");
  if (!is_minimal_at(e, ell)) throw Error(ErrorCode::NotMinimal, "model not minimal at " + std::to_string(ell));
  const unsigned v = valuation(delta, ell).value();
  if (v == 0) return {KodairaKind::Good, 0, ell};
  if (residue(e.a, ell) == 0 && residue(e.b, ell) == 0) return {KodairaKind::Additive, 0, ell};
  return {KodairaKind::Mult, v, ell};
}

/// Split test on residues: the reduced cubic has double root e = -3b/(2a) and
/// the node tangents have slopes +-sqrt(3e); split iff 3e is a square mod l.
/// Requires a != 0 mod l and Delta = 0 mod l.
inline bool node_is_split(u64 ell, u64 a, u64 b) {
  const u64 two_a_inv = invmod_prime(mulmod(2, a, ell), ell);
  const u64 minus_3b = (ell - mulmod(3, b, ell)) % ell;
  const u64 root = mulmod(minus_3b, two_a_inv, ell);
  return legendre(mulmod(3, root, ell), ell) == 1;
}

inline bool is_split_multiplicative(const WeierstrassPair& e, u64 ell) {
  const auto k = kodaira_at(e, ell);
  if (k.kind != KodairaKind::Mult) {
    throw Error(ErrorCode::NotMultiplicative, "reduction at " + std::to_string(ell) + " is " + k.str());
  }
  return node_is_split(ell, residue(e.a, ell), residue(e.b, ell));
}

inline unsigned valuation_u64(u64 n, u64 p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// p-part of the Tamagawa number c_l for l != p, both >= 5.
inline Integer tamagawa_p_part(const WeierstrassPair& e, u64 ell, u64 p) {
  require_local_prime(ell);
  require_local_prime(p);
  if (ell == p) throw Error(ErrorCode::InvalidArgument, "need l != p");
  const auto k = kodaira_at(e, ell);
  if (k.kind != KodairaKind::Mult) return 1;
  if (!node_is_split(ell, residue(e.a, ell), residue(e.b, ell))) return 1;
  return ipow(p, valuation_u64(k.n, p));
}

struct FrakC {
  unsigned a_count = 0;
  unsigned b_flag = 0;
  unsigned c_total = 0;

  friend bool operator==(const FrakC&, const FrakC&) = default;
};

/// Checks that `bad_primes` is exactly the set of primes dividing Delta.
inline void require_complete_factorisation(const Integer& delta, std::span<const u64> bad_primes) {
  Integer rest = abs(delta);
  for (u64 ell : bad_primes) {
    if (!is_prime(ell) || mpz_divisible_ui_p(rest.get_mpz_t(), ell) == 0) {
      throw Error(ErrorCode::InvalidArgument, std::to_string(ell) + " is not a prime factor of Delta");
    }
    Integer prime(ell);
    mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
  }
  if (rest != 1) throw Error(ErrorCode::InvalidArgument, "bad_primes does not cover Delta");
}

/// frak_c = (#{l != p : p | c_l}) + [p | #E(F_p)], with `counter` the field
/// table for p.
inline FrakC frak_c(const WeierstrassPair& e, const PointCounter& counter, std::span<const u64> bad_primes) {
  const u64 p = counter.p();
  require_local_prime(p);
  const Integer delta = discriminant(e);
  if (delta == 0) throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0");
  if (mpz_divisible_ui_p(delta.get_mpz_t(), 2) != 0 || mpz_divisible_ui_p(delta.get_mpz_t(), 3) != 0) {
    throw Error(ErrorCode::SmallBadPrime, "2 or 3 divides Delta");
  }
  if (mpz_divisible_ui_p(delta.get_mpz_t(), p) != 0) throw Error(ErrorCode::BadReductionAtP, "p divides Delta");
  if (!is_globally_minimal(e)) throw Error(ErrorCode::NotMinimal, "model is not globally minimal");
  require_complete_factorisation(delta, bad_primes);

  FrakC out;
  for (u64 ell : bad_primes) {
    if (tamagawa_p_part(e, ell, p) > 1) ++out.a_count;
  }
  const auto count = counter.count(residue(e.a, p), residue(e.b, p));
  out.b_flag = (count % static_cast<std::int64_t>(p) == 0) ? 1 : 0;
  out.c_total = out.a_count + out.b_flag;
  return out;
}

inline FrakC frak_c(const WeierstrassPair& e, u64 p, std::span<const u64> bad_primes) {
  require_local_prime(p);
  return frak_c(e, PointCounter(p), bad_primes);
}

/// Prime factors of Delta (which must fit in 64 bits after taking |.|).
inline std::vector<u64> bad_primes_of(const WeierstrassPair& e) {
  const Integer delta = abs(discriminant(e));
  if (delta == 0) throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0");
  if (!delta.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "|Delta| exceeds 64 bits");
  std::vector<u64> out;
  for (const auto& [ell, exp] : factor(delta.get_ui())) out.push_back(ell);
  return out;
}

}  // namespace ecstat
