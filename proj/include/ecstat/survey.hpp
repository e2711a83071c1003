#pragma once

// Census of short Weierstrass pairs ordered by naive height. Every pair in the
// height window is classified once; statistics are merged from per-strip
// partial tallies, so results do not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ecstat/bounds.hpp"
#include "ecstat/density.hpp"
#include "ecstat/error.hpp"
#include "ecstat/ffcurve.hpp"
#include "ecstat/localdata.hpp"
#include "ecstat/numtheory.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

using i64 = std::int64_t;

inline constexpr i64 kMaxSurveyHeight = 1'000'000'000'000'000'000;

/// Pairs with max(4|a|^3, 27 b^2) <= x. The two height terms are independent,
/// so the window is exactly the box |a| <= a_max, |b| <= b_max.
struct HeightWindow {
  i64 x = 0;
  i64 a_max = 0;
  i64 b_max = 0;

  static HeightWindow of(i64 x) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "height bound must be >= 0");
    if (x > kMaxSurveyHeight) throw Error(ErrorCode::InvalidArgument, "height bound exceeds 10^18");
    const auto ux = static_cast<u64>(x);
    return {x, static_cast<i64>(icbrt(ux / 4)), static_cast<i64>(isqrt(ux / 27))};
  }

  u64 width_a() const { return static_cast<u64>(2 * a_max + 1); }
  u64 width_b() const { return static_cast<u64>(2 * b_max + 1); }
};

inline u64 small_height(i64 a, i64 b) {
  const auto ua = static_cast<u128>(a < 0 ? -a : a);
  const auto ub = static_cast<u128>(b < 0 ? -b : b);
  const u128 ha = 4 * ua * ua * ua, hb = 27 * ub * ub;
  return static_cast<u64>(ha > hb ? ha : hb);
}

/// #W(x): number of integer pairs of height <= x.
inline Integer count_W(i64 x) {
  const auto w = HeightWindow::of(x);
  return Integer(w.width_a()) * Integer(w.width_b());
}

/// Field tables shared read-only by every worker for one prime p.
class SurveyContext {
 public:
  static constexpr unsigned kTorsionWitnesses = 5;

  explicit SurveyContext(u64 p) : p_(p), at_p_(p) {
    detail::require_prime_ge5(p);
    for (u64 q : primes_up_to(400)) {
      if (q >= 5 && q != p) witnesses_.emplace_back(q);
    }
  }

  u64 p() const { return p_; }
  const PointCounter& at_p() const { return at_p_; }
  const std::vector<PointCounter>& witnesses() const { return witnesses_; }

 private:
  u64 p_;
  PointCounter at_p_;
  std::vector<PointCounter> witnesses_;
};

struct AtP {
  bool good = false;
  std::int64_t point_count = 0;  // valid when good
  bool ordinary = false;
  bool anomalous = false;
  bool alpha_p_divisible = false;
};

struct SurveyRecord {
  i64 a = 0;
  i64 b = 0;
  u64 height = 0;
  i64 delta = 0;
  bool nonsingular = false;
  bool minimal = false;
  bool bad2or3 = false;
  std::vector<KodairaClass> kodaira;  // l >= 5 dividing Delta; minimal nonsingular pairs only
  std::optional<AtP> at_p;
  std::optional<bool> torsion_certified;
  std::optional<FrakC> frak_c;        // p | c_l requires the split node
  std::optional<FrakC> frak_c_kodaira_only;  // Kodaira-only congruence: any I_{jp}
  std::optional<unsigned> xi_valuation;

  /// Curves entering the p-statistics numerators.
  bool counted() const {
    return frak_c.has_value() && at_p->ordinary && torsion_certified.value_or(false);
  }
};

enum class Depth { Basic, Local, Full };

namespace detail {

inline bool minimal_small(i64 a, i64 b) {
  const u64 ua = static_cast<u64>(a < 0 ? -a : a), ub = static_cast<u64>(b < 0 ? -b : b);
  if (ua == 0 && ub == 0) return false;
  // any offending prime satisfies l^4 <= |a| (a != 0) or l^6 <= |b| (a == 0)
  for (u64 ell = 2;; ++ell) {
    const u64 l2 = ell * ell, l4 = l2 * l2, l6 = l4 * l2;
    if (ua != 0 ? l4 > ua : l6 > ub) break;
    if (ua % l4 == 0 && ub % l6 == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Classifies one pair. Local data and the statistics at p use machine-word
/// arithmetic and a single factorisation of Delta.
inline SurveyRecord classify_pair(i64 a, i64 b, const SurveyContext& ctx, Depth depth = Depth::Full) {
  SurveyRecord r;
  r.a = a;
  r.b = b;
  r.height = small_height(a, b);
  const __int128 delta = 4 * static_cast<__int128>(a) * a * a + 27 * static_cast<__int128>(b) * b;
  r.delta = static_cast<i64>(delta);
  r.nonsingular = delta != 0;
  r.minimal = detail::minimal_small(a, b);
  if (depth == Depth::Basic || !r.nonsingular || !r.minimal) return r;

  const u64 abs_delta = static_cast<u64>(delta < 0 ? -delta : delta);
  r.bad2or3 = abs_delta % 2 == 0 || abs_delta % 3 == 0;
  const auto factors = factor(abs_delta);
  for (const auto& [ell, e] : factors) {
    if (ell < 5) continue;
    const bool additive = a % static_cast<i64>(ell) == 0 && b % static_cast<i64>(ell) == 0;
    r.kodaira.push_back(additive ? KodairaClass{KodairaKind::Additive, 0, ell} : KodairaClass{KodairaKind::Mult, e, ell});
  }
  if (depth == Depth::Local) return r;

  const u64 p = ctx.p();
  AtP at;
  at.good = abs_delta % p != 0;
  if (at.good) {
    at.point_count = ctx.at_p().count(reduce_signed(a, p), reduce_signed(b, p));
    const auto t = tag_for_count(at.point_count, p);
    at.ordinary = t != ResidueTag::Excluded;
    at.anomalous = t == ResidueTag::InSPrime;
    at.alpha_p_divisible = at.anomalous;
  }
  r.at_p = at;
  if (r.bad2or3 || !at.good) return r;

  FrakC strict, kodaira_only;
  unsigned tau_valuation = 0;
  for (const auto& k : r.kodaira) {
    if (k.kind != KodairaKind::Mult || k.n % p != 0) continue;
    ++kodaira_only.a_count;
    if (node_is_split(k.ell, reduce_signed(a, k.ell), reduce_signed(b, k.ell))) {
      ++strict.a_count;
      tau_valuation += valuation_u64(k.n, p);
    }
  }
  strict.b_flag = kodaira_only.b_flag = at.anomalous ? 1 : 0;
  strict.c_total = strict.a_count + strict.b_flag;
  kodaira_only.c_total = kodaira_only.a_count + kodaira_only.b_flag;
  r.frak_c = strict;
  r.frak_c_kodaira_only = kodaira_only;
  r.xi_valuation = tau_valuation + 2 * strict.b_flag;

  if (at.ordinary) {
    if (p >= 11) {
      r.torsion_certified = true;  // no rational p-torsion for p >= 11
    } else {
      std::int64_t g = 0;
      unsigned used = 0;
      for (const auto& w : ctx.witnesses()) {
        if (abs_delta % w.p() == 0) continue;
        g = std::gcd(g, w.count(reduce_signed(a, w.p()), reduce_signed(b, w.p())));
        if (++used == SurveyContext::kTorsionWitnesses) break;
      }
      r.torsion_certified = used == SurveyContext::kTorsionWitnesses && g % static_cast<std::int64_t>(p) != 0;
    }
  }
  return r;
}

/// Every pair of height <= x exactly once, a ascending then b ascending.
template <typename Sink>
void enumerate_curves(i64 x, const SurveyContext& ctx, Sink&& sink, Depth depth = Depth::Full) {
  if (x < 27) throw Error(ErrorCode::InvalidArgument, "height bound must be >= 27");
  const auto w = HeightWindow::of(x);
  for (i64 a = -w.a_max; a <= w.a_max; ++a) {
    for (i64 b = -w.b_max; b <= w.b_max; ++b) sink(classify_pair(a, b, ctx, depth));
  }
}

struct KodairaTally {
  u64 good = 0;
  u64 additive = 0;
  std::map<unsigned, u64> mult;

  u64 mult_exactly(unsigned n) const {
    auto it = mult.find(n);
    return it == mult.end() ? 0 : it->second;
  }
  u64 total() const {
    u64 t = good + additive;
    for (const auto& [n, c] : mult) t += c;
    return t;
  }
};

inline void merge_histogram(std::map<unsigned, u64>& into, const std::map<unsigned, u64>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

inline u64 count_at_least(const std::map<unsigned, u64>& histogram, long n) {
  u64 t = 0;
  for (const auto& [k, v] : histogram) {
    if (static_cast<long>(k) >= n) t += v;
  }
  return t;
}

/// Commutative-monoid tally of survey records.
struct SurveyTotals {
  i64 x = 0;
  u64 p = 0;
  u64 W_count = 0;
  u64 singular = 0;
  u64 nonminimal = 0;  // nonsingular but not minimal
  u64 E_count = 0;     // minimal and nonsingular
  u64 bad2or3 = 0;
  u64 eligible = 0;  // E_count - bad2or3: denominator of the p-statistics
  u64 bad_at_p = 0;
  u64 non_ordinary = 0;
  u64 ordinary = 0;
  u64 anomalous = 0;
  u64 torsion_uncertified = 0;
  u64 counted = 0;
  std::map<u64, KodairaTally> kodaira;  // tracked primes only
  std::map<unsigned, u64> c_strict;
  std::map<unsigned, u64> c_kodaira_only;
  std::map<unsigned, u64> xi;

  void track(u64 ell) { kodaira.try_emplace(ell); }

  void add(const SurveyRecord& r) {
    ++W_count;
    if (!r.nonsingular) {
      ++singular;
      return;
    }
    if (!r.minimal) {
      ++nonminimal;
      return;
    }
    ++E_count;
    for (auto& [ell, tally] : kodaira) {
      auto it = std::find_if(r.kodaira.begin(), r.kodaira.end(), [ell = ell](const KodairaClass& k) { return k.ell == ell; });
      if (it == r.kodaira.end()) ++tally.good;
      else if (it->kind == KodairaKind::Additive) ++tally.additive;
      else ++tally.mult[it->n];
    }
    if (r.bad2or3) {
      ++bad2or3;
      return;
    }
    ++eligible;
    if (!r.at_p) return;
    if (!r.at_p->good) {
      ++bad_at_p;
      return;
    }
    if (!r.at_p->ordinary) {
      ++non_ordinary;
      return;
    }
    ++ordinary;
    if (r.at_p->anomalous) ++anomalous;
    if (!r.torsion_certified.value_or(false)) {
      ++torsion_uncertified;
      return;
    }
    ++counted;
    ++c_strict[r.frak_c->c_total];
    ++c_kodaira_only[r.frak_c_kodaira_only->c_total];
    ++xi[*r.xi_valuation];
  }

  void merge(const SurveyTotals& o) {
    W_count += o.W_count;
    singular += o.singular;
    nonminimal += o.nonminimal;
    E_count += o.E_count;
    bad2or3 += o.bad2or3;
    eligible += o.eligible;
    bad_at_p += o.bad_at_p;
    non_ordinary += o.non_ordinary;
    ordinary += o.ordinary;
    anomalous += o.anomalous;
    torsion_uncertified += o.torsion_uncertified;
    counted += o.counted;
    for (const auto& [ell, t] : o.kodaira) {
      auto& mine = kodaira[ell];
      mine.good += t.good;
      mine.additive += t.additive;
      merge_histogram(mine.mult, t.mult);
    }
    merge_histogram(c_strict, o.c_strict);
    merge_histogram(c_kodaira_only, o.c_kodaira_only);
    merge_histogram(xi, o.xi);
  }

  friend bool operator==(const SurveyTotals& l, const SurveyTotals& r) {
    auto tallies_equal = [](const std::map<u64, KodairaTally>& u, const std::map<u64, KodairaTally>& v) {
      if (u.size() != v.size()) return false;
      for (const auto& [ell, t] : u) {
        auto it = v.find(ell);
        if (it == v.end() || t.good != it->second.good || t.additive != it->second.additive || t.mult != it->second.mult) return false;
      }
      return true;
    };
    return l.x == r.x && l.p == r.p && l.W_count == r.W_count && l.singular == r.singular && l.nonminimal == r.nonminimal &&
           l.E_count == r.E_count && l.bad2or3 == r.bad2or3 && l.eligible == r.eligible && l.bad_at_p == r.bad_at_p &&
           l.non_ordinary == r.non_ordinary && l.ordinary == r.ordinary && l.anomalous == r.anomalous &&
           l.torsion_uncertified == r.torsion_uncertified && l.counted == r.counted && tallies_equal(l.kodaira, r.kodaira) &&
           l.c_strict == r.c_strict && l.c_kodaira_only == r.c_kodaira_only && l.xi == r.xi;
  }
};

inline constexpr const char* kCsvHeader = "a,b,height,minimal,delta,kodaira,ordinary,anomalous,frak_c,xi_valuation";

inline void write_csv_row(std::ostream& os, const SurveyRecord& r) {
  os << r.a << ',' << r.b << ',' << r.height << ',' << (r.minimal ? 1 : 0) << ',' << r.delta << ',';
  for (size_t i = 0; i < r.kodaira.size(); ++i) {
    if (i) os << ';';
    os << r.kodaira[i].ell << ':' << r.kodaira[i].str();
  }
  os << ',';
  if (r.at_p && r.at_p->good) os << (r.at_p->ordinary ? 1 : 0) << ',' << (r.at_p->anomalous ? 1 : 0);
  else os << ',';
  os << ',';
  if (r.frak_c) os << r.frak_c->c_total;
  os << ',';
  if (r.xi_valuation) os << *r.xi_valuation;
  os << '\n';
}

struct SurveyConfig {
  i64 x = 0;
  u64 p = 7;
  std::vector<u64> ells{5, 7};
  unsigned threads = 1;
  std::ostream* csv = nullptr;
};

/// Full census of the height window. Strips (one value of a each) are handed
/// to workers dynamically; CSV rows are committed in strip order.
inline SurveyTotals run_survey(const SurveyConfig& cfg) {
  if (cfg.x < 27) throw Error(ErrorCode::InvalidArgument, "height bound must be >= 27");
  for (u64 ell : cfg.ells) detail::require_prime_ge5(ell);
  const SurveyContext ctx(cfg.p);
  const auto w = HeightWindow::of(cfg.x);
  const auto strips = static_cast<size_t>(w.width_a());
  const unsigned workers = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(strips)));

  SurveyTotals prototype;
  prototype.x = cfg.x;
  prototype.p = cfg.p;
  for (u64 ell : cfg.ells) prototype.track(ell);

  std::vector<SurveyTotals> partial(workers, prototype);
  std::atomic<size_t> next{0};
  std::mutex csv_mutex;
  std::vector<std::optional<std::string>> pending(cfg.csv ? strips : 0);
  size_t committed = 0;
  if (cfg.csv) *cfg.csv << kCsvHeader << '\n';

  auto work = [&](unsigned id) {
    for (size_t s = next++; s < strips; s = next++) {
      const i64 a = -w.a_max + static_cast<i64>(s);
      std::ostringstream rows;
      for (i64 b = -w.b_max; b <= w.b_max; ++b) {
        const auto rec = classify_pair(a, b, ctx);
        partial[id].add(rec);
        if (cfg.csv) write_csv_row(rows, rec);
      }
      if (cfg.csv) {
        std::lock_guard lock(csv_mutex);
        pending[s] = rows.str();
        while (committed < strips && pending[committed]) {
          *cfg.csv << *pending[committed];
          pending[committed].reset();
          ++committed;
        }
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  SurveyTotals total = prototype;
  for (const auto& part : partial) total.merge(part);
  return total;
}

// ---------------------------------------------------------------------------
// Empirical densities against closed forms.

/// Empirical ratio set against a theoretical enclosure; gap is the largest
/// distance from the empirical value to a point of the enclosure.
struct Comparison {
  std::string name;
  u64 numerator = 0;
  u64 denominator = 0;
  Rational empirical;
  QInterval theoretical;
  Rational absolute_gap;
};

inline Comparison make_comparison(std::string name, u64 num, u64 den, QInterval theory) {
  Comparison c;
  c.name = std::move(name);
  c.numerator = num;
  c.denominator = den;
  c.empirical = den == 0 ? Rational(0) : Rational(Integer(num), Integer(den));
  c.theoretical = std::move(theory);
  const Rational d1 = abs_value(c.empirical - c.theoretical.lo()), d2 = abs_value(c.empirical - c.theoretical.hi());
  c.absolute_gap = d1 < d2 ? d2 : d1;
  return c;
}

/// #{minimal, Delta != 0} / #W(x) against 1/zeta(10).
inline Comparison minimality_comparison(const SurveyTotals& t, u64 L = kDefaultZeta10Truncation) {
  return make_comparison("minimal_nonsingular_over_W", t.E_count, t.W_count, reciprocal_zeta10(L));
}

inline Comparison singular_comparison(const SurveyTotals& t) {
  return make_comparison("singular_over_W", t.singular, t.W_count, QInterval(Rational(0)));
}

/// Fraction of curves with type I_n at l against rho_{I_n}(l) / rho_M(l).
inline Comparison kodaira_comparison(const SurveyTotals& t, u64 ell, long n) {
  auto it = t.kodaira.find(ell);
  if (it == t.kodaira.end()) throw Error(ErrorCode::InvalidArgument, "prime " + std::to_string(ell) + " was not tracked");
  detail::require_positive_index(n);
  return make_comparison("kodaira_I" + std::to_string(n) + "_at_" + std::to_string(ell),
                         it->second.mult_exactly(static_cast<unsigned>(n)), t.E_count,
                         QInterval(rho_In(ell, n) / rho_M(ell)));
}

enum class CheckStatus { Pass, Fail, Inconclusive };

constexpr std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive-at-this-x";
  }
  return "?";
}

/// empirical >= bound - slack, with an empty numerator reported as inconclusive.
struct OneSidedCheck {
  std::string name;
  long n = 0;
  u64 numerator = 0;
  u64 denominator = 0;
  Rational empirical;
  Rational bound;
  Rational slack;
  CheckStatus status = CheckStatus::Inconclusive;
};

inline OneSidedCheck make_one_sided(std::string name, long n, u64 num, u64 den, Rational bound, Rational slack) {
  OneSidedCheck c;
  c.name = std::move(name);
  c.n = n;
  c.numerator = num;
  c.denominator = den;
  c.empirical = den == 0 ? Rational(0) : Rational(Integer(num), Integer(den));
  c.bound = std::move(bound);
  c.slack = std::move(slack);
  if (num == 0) c.status = CheckStatus::Inconclusive;
  else c.status = (c.bound - c.slack <= c.empirical) ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

inline const Rational& default_survey_slack() {
  static const Rational slack(Integer(1), Integer(100));
  return slack;
}

enum class CongruencePredicate { Strict, KodairaOnly };

/// Fraction of eligible curves (minimal, nonsingular, good at 2 and 3) that are
/// good ordinary at p with certified trivial p-torsion and frak_c >= n.
inline OneSidedCheck g_comparison(const SurveyTotals& t, long n, const BoundReport& bound,
                                  CongruencePredicate predicate = CongruencePredicate::Strict,
                                  const Rational& slack = default_survey_slack()) {
  const auto& hist = predicate == CongruencePredicate::Strict ? t.c_strict : t.c_kodaira_only;
  const std::string name = predicate == CongruencePredicate::Strict ? "g_density_strict" : "g_density_kodaira_only";
  return make_one_sided(name, n, count_at_least(hist, n), t.eligible, bound.value.lo(), slack);
}

/// Same population, v_p(tau_p * alpha_p^2) >= n.
inline OneSidedCheck xi_comparison(const SurveyTotals& t, long n, const BoundReport& bound,
                                   const Rational& slack = default_survey_slack()) {
  return make_one_sided("xi_density", n, count_at_least(t.xi, n), t.eligible, bound.value.lo(), slack);
}

inline Comparison empirical_kodaira_density(u64 ell, long n, i64 x, unsigned threads = 1) {
  detail::require_prime_ge5(ell);
  SurveyConfig cfg;
  cfg.x = x;
  cfg.p = ell == 5 ? 7 : 5;
  cfg.ells = {ell};
  cfg.threads = threads;
  return kodaira_comparison(run_survey(cfg), ell, n);
}

inline OneSidedCheck empirical_g_density(u64 p, long n, i64 x, unsigned threads = 1,
                                         CongruencePredicate predicate = CongruencePredicate::Strict) {
  SurveyConfig cfg;
  cfg.x = x;
  cfg.p = p;
  cfg.ells = {};
  cfg.threads = threads;
  const auto totals = run_survey(cfg);
  return g_comparison(totals, n, lower_bound_g(p, n, default_truncation(p)), predicate);
}

inline OneSidedCheck empirical_xi_density(u64 p, long n, i64 x, unsigned threads = 1) {
  SurveyConfig cfg;
  cfg.x = x;
  cfg.p = p;
  cfg.ells = {};
  cfg.threads = threads;
  const auto totals = run_survey(cfg);
  return xi_comparison(totals, n, lower_bound_chi(p, n, default_truncation(p)));
}

}  // namespace ecstat
