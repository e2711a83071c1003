#pragma once

// Short Weierstrass curves Y^2 = X^3 + aX + b over prime fields: point counts
// and the classification of residue pairs (a, b) mod p by #E(F_p) mod p.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ecstat/error.hpp"
#include "ecstat/numtheory.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

inline constexpr u64 kMaxFieldPrime = u64{1} << 20;

/// A pair (a, b) of residues modulo an odd prime p < 2^20.
class ResiduePair {
 public:
  ResiduePair(u64 p, u64 a, u64 b) : p_(p), a_(a), b_(b) {
    if (p >= kMaxFieldPrime) throw Error(ErrorCode::PrimeTooLarge, "p must be < 2^20");
    if (p == 2 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "p must be an odd prime");
    if (a >= p || b >= p) throw Error(ErrorCode::InvalidArgument, "residues must lie in [0, p)");
  }

  u64 p() const { return p_; }
  u64 a() const { return a_; }
  u64 b() const { return b_; }

 private:
  u64 p_, a_, b_;
};

/// (4a^3 + 27b^2) mod p.
inline u64 discriminant_mod(u64 p, u64 a, u64 b) {
  const u64 a3 = mulmod(mulmod(a, a, p), a, p);
  return (mulmod(4 % p, a3, p) + mulmod(27 % p, mulmod(b, b, p), p)) % p;
}

inline u64 discriminant_mod(const ResiduePair& pair) { return discriminant_mod(pair.p(), pair.a(), pair.b()); }

/// Quadratic character table of F_p, reused for every curve over the same field.
class PointCounter {
 public:
  explicit PointCounter(u64 p) : p_(p), chi_(p, -1) {
    if (p >= kMaxFieldPrime) throw Error(ErrorCode::PrimeTooLarge, "p must be < 2^20");
    if (p == 2 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "p must be an odd prime");
    chi_[0] = 0;
    for (u64 y = 1; y <= p / 2; ++y) chi_[y * y % p] = 1;
  }

  u64 p() const { return p_; }
  int chi(u64 v) const { return chi_[v % p_]; }

  /// #E(F_p) including the point at infinity, for residues a, b in [0, p).
  /// Assumes the curve is nonsingular.
  std::int64_t count(u64 a, u64 b) const {
    std::int64_t sum = 0;
    for (u64 x = 0; x < p_; ++x) sum += chi_[((x * x % p_ + a) * x + b) % p_];
    return static_cast<std::int64_t>(p_) + 1 + sum;
  }

 private:
  u64 p_;
  std::vector<std::int8_t> chi_;
};

inline std::int64_t count_points(const ResiduePair& pair) {
  if (discriminant_mod(pair) == 0) throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0 mod p");
  return PointCounter(pair.p()).count(pair.a(), pair.b());
}

enum class ResidueTag {
  Singular,
  InS,       // ordinary, non-anomalous: #E mod p not in {0, 1}
  InSPrime,  // anomalous: #E = 0 mod p
  Excluded,  // #E = 1 mod p
};

constexpr std::string_view to_string(ResidueTag t) {
  switch (t) {
    case ResidueTag::Singular: return "Singular";
    case ResidueTag::InS: return "InS";
    case ResidueTag::InSPrime: return "InSPrime";
    case ResidueTag::Excluded: return "Excluded";
  }
  return "?";
}

struct ResidueClass {
  ResidueTag tag;
  std::optional<std::int64_t> point_count;  // absent for Singular
};

inline ResidueTag tag_for_count(std::int64_t count, u64 p) {
  const auto r = static_cast<u64>(count) % p;
  if (r == 0) return ResidueTag::InSPrime;
  if (r == 1) return ResidueTag::Excluded;
  return ResidueTag::InS;
}

inline ResidueClass classify_residue(const PointCounter& counter, u64 a, u64 b) {
  if (discriminant_mod(counter.p(), a, b) == 0) return {ResidueTag::Singular, std::nullopt};
  const auto n = counter.count(a, b);
  return {tag_for_count(n, counter.p()), n};
}

inline ResidueClass classify_residue(const ResiduePair& pair) {
  return classify_residue(PointCounter(pair.p()), pair.a(), pair.b());
}

struct FrakSCounts {
  u64 p = 0;
  u64 count_S = 0;
  u64 count_Sprime = 0;
  u64 count_singular = 0;
  u64 count_excluded = 0;
  Rational density_S;
  Rational density_Sprime;
};

/// Exhaustive classification of all p^2 residue pairs for a prime 5 <= p < 2^20.
inline FrakSCounts frak_S_counts(u64 p) {
  if (p >= kMaxFieldPrime) throw Error(ErrorCode::PrimeTooLarge, "p must be < 2^20");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p < 5) throw Error(ErrorCode::PrimeTooSmall, "p must be >= 5");

  const PointCounter counter(p);
  FrakSCounts out;
  out.p = p;
  std::vector<u64> cubic(p);
  for (u64 a = 0; a < p; ++a) {
    for (u64 x = 0; x < p; ++x) cubic[x] = (x * x % p + a) * x % p;
    for (u64 b = 0; b < p; ++b) {
      if (discriminant_mod(p, a, b) == 0) {
        ++out.count_singular;
        continue;
      }
      std::int64_t sum = 0;
      for (u64 x = 0; x < p; ++x) {
        u64 v = cubic[x] + b;
        if (v >= p) v -= p;
        sum += counter.chi(v);
      }
      switch (tag_for_count(static_cast<std::int64_t>(p) + 1 + sum, p)) {
        case ResidueTag::InS: ++out.count_S; break;
        case ResidueTag::InSPrime: ++out.count_Sprime; break;
        default: ++out.count_excluded; break;
      }
    }
  }
  const Rational total(Integer(p * p));
  out.density_S = Rational(Integer(out.count_S)) / total;
  out.density_Sprime = Rational(Integer(out.count_Sprime)) / total;
  return out;
}

}  // namespace ecstat
