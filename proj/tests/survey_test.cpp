#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "ecstat/survey.hpp"

using namespace ecstat;

namespace {

long brute_count(u64 q, const WeierstrassPair& e) {
  const u64 a = residue(e.a, q), b = residue(e.b, q);
  long n = 1;
  for (u64 x = 0; x < q; ++x) {
    const u64 rhs = (x * x % q * x + a * x + b) % q;
    for (u64 y = 0; y < q; ++y) n += (y * y % q == rhs) ? 1 : 0;
  }
  return n;
}

// Independent recomputation of every tally, one pair at a time, through the
// arbitrary-precision local API and brute-force point counts.
SurveyTotals naive_totals(long x, u64 p, const std::vector<u64>& ells) {
  SurveyTotals t;
  t.x = x;
  t.p = p;
  for (u64 ell : ells) t.track(ell);
  for (long a = -100; a <= 100; ++a) {
    for (long b = -100; b <= 100; ++b) {  // covers every height <= 2e5
      const WeierstrassPair e{Integer(a), Integer(b)};
      if (naive_height(e) > x) continue;
      ++t.W_count;
      const Integer delta = discriminant(e);
      if (delta == 0) {
        ++t.singular;
        continue;
      }
      if (!is_globally_minimal(e)) {
        ++t.nonminimal;
        continue;
      }
      ++t.E_count;
      for (u64 ell : ells) {
        const auto k = kodaira_at(e, ell);
        auto& tally = t.kodaira[ell];
        if (k.kind == KodairaKind::Good) ++tally.good;
        else if (k.kind == KodairaKind::Additive) ++tally.additive;
        else ++tally.mult[k.n];
      }
      if (residue(delta, 2) == 0 || residue(delta, 3) == 0) {
        ++t.bad2or3;
        continue;
      }
      ++t.eligible;
      if (residue(delta, p) == 0) {
        ++t.bad_at_p;
        continue;
      }
      const long np = brute_count(p, e);
      if (np % static_cast<long>(p) == 1) {
        ++t.non_ordinary;
        continue;
      }
      ++t.ordinary;
      const bool anomalous = np % static_cast<long>(p) == 0;
      if (anomalous) ++t.anomalous;
      bool certified = true;
      if (p < 11) {
        long g = 0;
        int used = 0;
        for (u64 q = 5; used < 5 && q < 400; ++q) {
          if (!is_prime(q) || q == p || residue(delta, q) == 0) continue;
          g = std::gcd(g, brute_count(q, e));
          ++used;
        }
        certified = used == 5 && g % static_cast<long>(p) != 0;
      }
      if (!certified) {
        ++t.torsion_uncertified;
        continue;
      }
      ++t.counted;
      const auto bad = bad_primes_of(e);
      const auto strict = frak_c(e, p, bad);
      unsigned kod_only = strict.b_flag, tau = 0;
      for (u64 ell : bad) {
        const auto k = kodaira_at(e, ell);
        if (k.kind == KodairaKind::Mult && k.n % p == 0) ++kod_only;
        const auto c = tamagawa_p_part(e, ell, p);
        for (Integer r = c; r > 1; r /= static_cast<long>(p)) ++tau;
      }
      ++t.c_strict[strict.c_total];
      ++t.c_kodaira_only[kod_only];
      ++t.xi[tau + 2 * strict.b_flag];
    }
  }
  return t;
}

SurveyTotals fast_totals(long x, u64 p, const std::vector<u64>& ells, unsigned threads = 1, std::ostream* csv = nullptr) {
  SurveyConfig cfg;
  cfg.x = x;
  cfg.p = p;
  cfg.ells = ells;
  cfg.threads = threads;
  cfg.csv = csv;
  return run_survey(cfg);
}

}  // namespace

TEST(Survey, CountW) {
  EXPECT_EQ(count_W(10000), 1053);
  EXPECT_EQ(count_W(27), 9);
  EXPECT_EQ(count_W(100'000'000), 2'251'665);
  const auto w = HeightWindow::of(100'000'000);
  EXPECT_EQ(w.a_max, 292);
  EXPECT_EQ(w.b_max, 1924);
  EXPECT_THROW(HeightWindow::of(-1), Error);
}

TEST(Survey, HeightWindowIsExactlyTheBox) {
  for (long x : {27L, 28L, 107L, 108L, 1000L, 4000L, 10000L, 123456L}) {
    u64 direct = 0;
    for (long a = -400; a <= 400; ++a) {
      for (long b = -400; b <= 400; ++b) direct += small_height(a, b) <= static_cast<u64>(x) ? 1 : 0;
    }
    EXPECT_EQ(Integer(direct), count_W(x)) << x;
  }
}

TEST(Survey, AgreesWithNaiveOracle) {
  for (long x : {10000L, 200000L}) {
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
      const std::vector<u64> ells{5, 7, 13};
      const auto fast = fast_totals(x, p, ells);
      const auto slow = naive_totals(x, p, ells);
      EXPECT_EQ(fast, slow) << "x=" << x << " p=" << p;
      EXPECT_EQ(fast.W_count, static_cast<u64>(count_W(x).get_ui()));
    }
  }
}

TEST(Survey, KodairaClassesAreExhaustive) {
  const auto t = fast_totals(1'000'000, 7, {5, 7, 11, 13});
  for (const auto& [ell, tally] : t.kodaira) EXPECT_EQ(tally.total(), t.E_count) << ell;
  EXPECT_EQ(t.W_count, t.singular + t.nonminimal + t.E_count);
  EXPECT_EQ(t.E_count, t.bad2or3 + t.eligible);
  EXPECT_EQ(t.eligible, t.bad_at_p + t.non_ordinary + t.ordinary);
  EXPECT_EQ(t.ordinary, t.torsion_uncertified + t.counted);
}

TEST(Survey, ThreadCountDoesNotChangeResults) {
  std::ostringstream csv1, csv4;
  const auto one = fast_totals(2'000'000, 7, {5, 7}, 1, &csv1);
  const auto four = fast_totals(2'000'000, 7, {5, 7}, 4, &csv4);
  EXPECT_EQ(one, four);
  EXPECT_EQ(csv1.str(), csv4.str());
}

TEST(Survey, ClassifyPairAgreesWithLocalApi) {
  const SurveyContext ctx(7);
  std::mt19937_64 gen(5);
  for (int i = 0; i < 4000; ++i) {
    const long a = static_cast<long>(gen() % 20001) - 10000, b = static_cast<long>(gen() % 200001) - 100000;
    const auto r = classify_pair(a, b, ctx);
    const WeierstrassPair e{Integer(a), Integer(b)};
    ASSERT_EQ(r.nonsingular, discriminant(e) != 0);
    if (!r.nonsingular) continue;
    ASSERT_EQ(r.minimal, is_globally_minimal(e));
    if (!r.minimal) continue;
    ASSERT_EQ(Integer(r.delta), discriminant(e));
    for (const auto& k : r.kodaira) ASSERT_EQ(k, kodaira_at(e, k.ell));
    ASSERT_EQ(r.frak_c.has_value(), !r.bad2or3 && r.at_p->good);
  }
}

TEST(Survey, CsvRows) {
  const SurveyContext ctx(7);
  std::ostringstream os;
  write_csv_row(os, classify_pair(2, 2, ctx));
  EXPECT_EQ(os.str(), "2,2,108,1,140,5:I1;7:I1,,,,\n");
  os.str("");
  write_csv_row(os, classify_pair(1, 1, ctx));
  EXPECT_EQ(os.str(), "1,1,27,1,31,31:I1,1,0,0,0\n");
  std::ostringstream full;
  fast_totals(27, 7, {5}, 1, &full);
  const std::string text = full.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
}

TEST(Survey, ComparisonsAtModerateHeight) {
  const auto t = fast_totals(10'000'000, 7, {5, 7});
  const auto m = minimality_comparison(t);
  EXPECT_LT(m.absolute_gap, Rational(Integer(1), Integer(1000)));
  const auto k = kodaira_comparison(t, 5, 1);
  EXPECT_LT(k.absolute_gap, Rational(Integer(1), Integer(100)));
  EXPECT_THROW(kodaira_comparison(t, 11, 1), Error);
  const auto g = g_comparison(t, 1, lower_bound_g(7, 1, 170));
  EXPECT_EQ(g.status, CheckStatus::Pass);
  const auto g3 = g_comparison(t, 3, lower_bound_g(7, 3, 170));
  EXPECT_EQ(g3.status, CheckStatus::Inconclusive);
}

TEST(Survey, Preconditions) {
  EXPECT_THROW(fast_totals(26, 7, {5}), Error);
  EXPECT_THROW(fast_totals(1000, 4, {5}), Error);
  EXPECT_THROW(fast_totals(1000, 7, {3}), Error);
}
