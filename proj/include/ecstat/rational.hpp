#pragma once

// Exact rationals (always reduced) and closed rational intervals.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "ecstat/error.hpp"

namespace ecstat {

using Integer = mpz_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Integer ipow(unsigned long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

/// Arbitrary-precision rational held in lowest terms with a positive
/// denominator. Equality is exact.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(unsigned long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& v) : q_(v) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "n", "n/d" or a plain decimal "-12.345" (exactly).
  static Rational parse(const std::string& text) {
    if (const auto dot = text.find('.'); dot != std::string::npos) {
      const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
      const bool digits_only = frac.find_first_not_of("0123456789") == std::string::npos &&
                               whole.find_first_not_of("0123456789", whole.starts_with('-') ? 1 : 0) == std::string::npos;
      if (!digits_only || text.size() < 2) throw Error(ErrorCode::InvalidArgument, "not a rational: " + text);
      Integer scaled;
      if (scaled.set_str((whole == "-" ? "-0" : whole.empty() ? "0" : whole) + frac, 10) != 0) {
        throw Error(ErrorCode::InvalidArgument, "not a rational: " + text);
      }
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      return Rational(mpq_class(scaled, den));
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw Error(ErrorCode::InvalidArgument, "not a rational: " + text);
    if (q.get_den() == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
    return Rational(q);
  }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  Rational reciprocal() const { return Rational(1) / *this; }

  /// Integer power (exponent may be negative for nonzero values).
  Rational pow(long e) const {
    if (e < 0) return reciprocal().pow(-e);
    return Rational(ipow(num(), static_cast<unsigned long>(e)), ipow(den(), static_cast<unsigned long>(e)));
  }

  std::string str() const { return q_.get_str(10); }
  double to_double() const { return q_.get_d(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Rational abs_value(const Rational& r) { return r.sign() < 0 ? -r : r; }

enum class Rounding { Down, Up, Nearest };

/// Fixed-point decimal rendering with `digits` fractional digits. Down/Up are
/// directed (floor/ceiling of value * 10^digits); Nearest rounds half up.
inline std::string to_decimal(const Rational& value, unsigned digits, Rounding mode = Rounding::Nearest) {
  const Integer scale = ipow(10UL, digits);
  Integer scaled_num = value.num() * scale;
  Integer q;
  switch (mode) {
    case Rounding::Down:
      q = floor_div(scaled_num, value.den());
      break;
    case Rounding::Up:
      q = -floor_div(-scaled_num, value.den());
      break;
    case Rounding::Nearest:
      q = floor_div(2 * scaled_num + value.den(), 2 * value.den());
      break;
  }
  const bool negative = q < 0;
  if (negative) q = -q;
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

/// Scientific rendering "d.ddd...e[+-]k" with `significant` digits, rounded in
/// the given direction.
inline std::string to_scientific(const Rational& value, unsigned significant, Rounding mode = Rounding::Nearest) {
  if (value.is_zero()) return "0";
  if (significant == 0) significant = 1;
  const bool negative = value.sign() < 0;
  const Rational mag = negative ? -value : value;
  // exponent k with 10^k <= mag < 10^(k+1)
  long k = static_cast<long>(mpz_sizeinbase(mag.num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(mag.den().get_mpz_t(), 10));
  auto ten_pow = [](long e) { return Rational(10).pow(e); };
  while (mag < ten_pow(k)) --k;
  while (!(mag < ten_pow(k + 1))) ++k;
  const Rational scaled = mag * ten_pow(static_cast<long>(significant) - 1 - k);
  // directed rounding of the magnitude flips with the sign
  Rounding m = mode;
  if (negative && mode == Rounding::Down) m = Rounding::Up;
  else if (negative && mode == Rounding::Up) m = Rounding::Down;
  std::string digits = to_decimal(scaled, 0, m);
  if (digits.size() > significant) {  // rounding carried into a new digit
    ++k;
    digits.pop_back();
  }
  std::string s = digits.substr(0, 1);
  if (digits.size() > 1) s += "." + digits.substr(1);
  s += "e" + std::string(k < 0 ? "-" : "+") + std::to_string(k < 0 ? -k : k);
  return negative ? "-" + s : s;
}

/// Closed interval [lo, hi] with exact rational endpoints. Arithmetic is exact,
/// so the result of every operation encloses the exact image set.
class QInterval {
 public:
  QInterval() = default;
  explicit QInterval(const Rational& point) : lo_(point), hi_(point) {}
  QInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw Error(ErrorCode::InvalidArgument, "interval with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const QInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

  friend QInterval operator+(const QInterval& a, const QInterval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend QInterval operator-(const QInterval& a, const QInterval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }

  friend QInterval operator*(const QInterval& a, const QInterval& b) {
    if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) return {a.lo_ * b.lo_, a.hi_ * b.hi_};
    Rational c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    Rational lo = c[0], hi = c[0];
    for (const auto& v : c) {
      if (v < lo) lo = v;
      if (hi < v) hi = v;
    }
    return {lo, hi};
  }

  friend QInterval operator*(const QInterval& a, const Rational& s) { return a * QInterval(s); }

  /// 1/[lo, hi] for intervals not containing zero.
  QInterval reciprocal() const {
    if (lo_.sign() <= 0 && hi_.sign() >= 0) throw Error(ErrorCode::InvalidArgument, "reciprocal of interval containing 0");
    return {hi_.reciprocal(), lo_.reciprocal()};
  }

  friend bool operator==(const QInterval& a, const QInterval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  friend std::ostream& operator<<(std::ostream& os, const QInterval& iv) {
    return os << "[" << to_decimal(iv.lo_, 17, Rounding::Down) << ", " << to_decimal(iv.hi_, 17, Rounding::Up) << "]";
  }

 private:
  Rational lo_;
  Rational hi_;
};

}  // namespace ecstat
