#include <gtest/gtest.h>

#include "ecstat/bounds.hpp"

using namespace ecstat;

namespace {

Rational dec(const char* s) { return Rational::parse(s); }

std::vector<Rational> factors(u64 p, u64 L) {
  std::vector<Rational> out;
  for (u64 ell = 5; ell <= L; ++ell) {
    bool prime = true;
    for (u64 d = 2; d * d <= ell; ++d) prime = prime && ell % d != 0;
    if (!prime || ell == p) continue;
    const Integer l(ell);
    out.emplace_back(l * l * l * l * l * l * l * l * (l - 1) * (l - 1),
                     (ipow(l, 10) - 1) * (ipow(l, static_cast<unsigned long>(p)) - 1));
  }
  return out;
}

}  // namespace

TEST(Bounds, FactorExamples) {
  EXPECT_EQ(bound_factor(5, 7), Rational(Integer(6250000), Integer(9765624) * Integer(78124)));
  EXPECT_THROW(bound_factor(2, 7), Error);
  try {
    bound_factor(7, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExcludedPrime);
  }
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 29ULL}) {
    for (u64 ell : primes_up_to(400)) {
      if (ell < 5 || ell == p) continue;
      ASSERT_LT(bound_factor(ell, p), Rational(ell).pow(1 - static_cast<long>(p)));
    }
  }
}

TEST(Bounds, SymmetricSumConventions) {
  EXPECT_EQ(sym_sum_e(0, 7, 100), QInterval(Rational(1)));
  EXPECT_EQ(sym_sum_e(-1, 7, 100), QInterval(Rational(0)));
  EXPECT_EQ(sym_sum_e(-5, 11, 100), QInterval(Rational(0)));
  EXPECT_THROW(sym_sum_e(1, 7, 10), Error);
}

TEST(Bounds, SymmetricSumsMatchDirectEnumeration) {
  const auto f = factors(7, 100);
  Rational e1 = 0, e2 = 0, e3 = 0;
  for (size_t i = 0; i < f.size(); ++i) {
    e1 += f[i];
    for (size_t j = i + 1; j < f.size(); ++j) {
      e2 += f[i] * f[j];
      for (size_t k = j + 1; k < f.size(); ++k) e3 += f[i] * f[j] * f[k];
    }
  }
  const auto sums = symmetric_sums(3, 7, 100);
  EXPECT_EQ(sums[1].lo(), e1);
  EXPECT_EQ(sums[2].lo(), e2);
  EXPECT_EQ(sums[3].lo(), e3);
  EXPECT_LT(dec("0.00000819"), e1);
  EXPECT_LT(e1, dec("0.00000826"));
  EXPECT_LT(f[0], e1);
  EXPECT_LT(e1 - f[0], Rational(11).pow(-6) * Rational(2));
}

TEST(Bounds, SymmetricSumUpperEndpointCoversLongerSums) {
  for (u64 p : {5ULL, 7ULL}) {
    const auto coarse = symmetric_sums(3, p, 30);
    const auto fine = symmetric_sums(3, p, 3000);
    for (size_t n = 1; n <= 3; ++n) {
      EXPECT_LE(fine[n].hi(), coarse[n].hi());
      EXPECT_LE(coarse[n].lo(), fine[n].lo());
      EXPECT_LE(fine[n].lo(), coarse[n].hi());
    }
  }
}

TEST(Bounds, ZetaReciprocal) {
  const auto z7 = zeta_recip_lower(7, 100);
  EXPECT_TRUE(z7.contains(dec("0.9917198558384443104281859314975506916499")));
  EXPECT_LT(z7.lo(), Rational(1));
  for (unsigned s : {5U, 11U, 13U}) {
    const auto z = zeta_recip_lower(s, 50);
    EXPECT_LT(z.lo(), Rational(1));
    EXPECT_LT(Rational(1) - Rational(2).pow(-static_cast<long>(s)) * 2, z.lo());
  }
  EXPECT_TRUE(zeta_recip_lower(5, 50).contains(dec("0.9643873404292624591264365884449845712377")));
  Rational prev = 0;
  for (u64 N : {10ULL, 20ULL, 40ULL, 80ULL}) {
    const auto z = zeta_recip_lower(7, N);
    EXPECT_LE(prev, z.lo());
    prev = z.lo();
  }
  EXPECT_THROW(zeta_recip_lower(7, 9), Error);
}

TEST(Bounds, ChiExamples) {
  const auto r0 = lower_bound_chi(7, 0, default_truncation(7));
  EXPECT_LT(dec("0.64"), r0.value.lo());
  EXPECT_LT(r0.value.lo(), dec("0.66"));
  EXPECT_FALSE(r0.notes.empty());
  EXPECT_EQ(r0.theorem, BoundKind::EulerCharacteristic);

  const auto r1 = lower_bound_chi(7, 1, default_truncation(7));
  EXPECT_LT(dec("0.000005"), r1.value.lo());
  EXPECT_LT(r1.value.lo(), dec("0.000007"));
  EXPECT_EQ(r1.terms.e_aux, QInterval(Rational(0)));
  EXPECT_EQ(r1.terms.aux_index, -1);
  EXPECT_THROW(lower_bound_chi(7, -1, 170), Error);
}

TEST(Bounds, GExamples) {
  const u64 L = default_truncation(7);
  const auto g1 = lower_bound_g(7, 1, L);
  EXPECT_LT(dec("0.0805"), g1.value.lo());
  EXPECT_LT(g1.value.lo(), dec("0.0815"));
  EXPECT_EQ(g1.terms.S_p, Rational(ipow(7, 8) * 32, ipow(7, 10) - 1));
  EXPECT_EQ(g1.terms.S_p_prime, Rational(ipow(7, 8) * 4, ipow(7, 10) - 1));
  const auto ml = lower_bound_mu_lambda(7, 1, L);
  EXPECT_EQ(ml.value, g1.value);
  EXPECT_EQ(ml.theorem, BoundKind::MuPlusLambda);
  EXPECT_LT(lower_bound_g(7, 2, L).value.lo(), g1.value.lo());
  EXPECT_THROW(lower_bound_g(7, 0, L), Error);
  EXPECT_THROW(lower_bound_g(7, 1, 8), Error);
  EXPECT_THROW(lower_bound_g(13, 1, 14), Error);
  EXPECT_THROW(lower_bound_g(9, 1, 200), Error);
}

TEST(Bounds, ValueIsAssembledFromTerms) {
  const auto r = lower_bound_g(11, 2, 300);
  const auto expect = r.terms.zeta_recip * (r.terms.e_n * r.terms.S_p + r.terms.e_aux * r.terms.S_p_prime);
  EXPECT_EQ(r.value, expect);
  EXPECT_EQ(r.terms.e_n, sym_sum_e(2, 11, 300));
  EXPECT_EQ(r.terms.e_aux, sym_sum_e(1, 11, 300));
}

TEST(Bounds, GridProperties) {
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    const auto counts = frak_S_counts(p);
    const u64 L = default_truncation(p);
    for (long n = 1; n <= 4; ++n) {
      const auto g = lower_bound_g(p, n, L, counts);
      EXPECT_LT(Rational(0), g.value.lo());
      EXPECT_LT(lower_bound_g(p, n + 1, L, counts).value.lo(), g.value.lo());
      EXPECT_EQ(lower_bound_chi(p, n, L, counts).terms.e_n, g.terms.e_n);
      QInterval outer = g.value;
      for (u64 l2 = 2 * L; l2 <= 8 * L; l2 *= 2) {
        const auto refined = lower_bound_g(p, n, l2, counts).value;
        EXPECT_LE(outer.lo(), refined.lo());
        EXPECT_TRUE(outer.contains(refined));
        outer = refined;
      }
    }
  }
}

TEST(Bounds, ExactDensityAboveClosedFormBound) {
  const std::vector<u64> five{5}, none, five_eleven{5, 11};
  for (long k : {1L, 2L}) {
    const auto d = density_E_sigma_k(five, k, 7, 200);
    EXPECT_LT(d.closed_form_bound.hi(), d.density.lo());
    const auto dp = density_E_sigma_k_prime(five, k, 7, 200);
    EXPECT_LT(dp.closed_form_bound.hi(), dp.density.lo());
  }
  const auto two = density_E_sigma_k(five_eleven, 1, 7, 200);
  EXPECT_LT(two.closed_form_bound.hi(), two.density.lo());

  const auto empty = density_E_sigma_k(none, 3, 7, 200);
  const auto counts = frak_S_counts(7);
  EXPECT_EQ(empty.closed_form_bound, zeta_recip_lower(7, 200) * normalised_class_measure(7, counts.count_S));
  EXPECT_LT(empty.closed_form_bound.hi(), empty.density.lo());

  EXPECT_THROW(density_E_sigma_k(five, 0, 7, 200), Error);
  const std::vector<u64> seven{7};
  EXPECT_THROW(density_E_sigma_k(seven, 1, 7, 200), Error);
}
