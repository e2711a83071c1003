#pragma once

// Self-check suites run by `ecstat verify`.

#include <functional>
#include <string>
#include <vector>

#include "ecstat/bounds.hpp"
#include "ecstat/density.hpp"
#include "ecstat/ffcurve.hpp"
#include "ecstat/localdata.hpp"
#include "ecstat/montecarlo.hpp"
#include "ecstat/rational.hpp"
#include "ecstat/reference_tables.hpp"

namespace ecstat {

struct CheckLine {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<CheckLine> lines;

  bool ok() const {
    for (const auto& l : lines) {
      if (!l.pass) return false;
    }
    return true;
  }
  void add(std::string suite, std::string name, bool pass, std::string detail = {}) {
    lines.push_back({std::move(suite), std::move(name), pass, std::move(detail)});
  }
};

inline const Rational& table_tolerance() {
  static const Rational tol(Integer(1), ipow(10, 12));
  return tol;
}

/// Largest deviation of a computed row from the embedded reference decimals.
inline Rational table_row_deviation(const FrakSCounts& c, const ReferenceRow& ref) {
  const Rational dS = abs_value(c.density_S - Rational::parse(std::string(ref.density_S)));
  const Rational dSp = abs_value(c.density_Sprime - Rational::parse(std::string(ref.density_Sprime)));
  return dS < dSp ? dSp : dS;
}

/// Singular residue pairs mod l, by brute force over all l^2 pairs.
inline u64 count_singular_residues(u64 ell) {
  u64 n = 0;
  for (u64 a = 0; a < ell; ++a) {
    for (u64 b = 0; b < ell; ++b) n += discriminant_mod(ell, a, b) == 0 ? 1 : 0;
  }
  return n;
}

/// Split test via smooth points: a nodal cubic has l - 1 smooth F_l-points
/// when split and l + 1 when nonsplit.
inline bool node_is_split_by_count(const PointCounter& counter, u64 a, u64 b) {
  const std::int64_t smooth = counter.count(a, b) - 1;  // drop the node
  return smooth == static_cast<std::int64_t>(counter.p()) - 1;
}

/// Disagreements between the two split tests over multiplicative pairs mod l^2.
inline u64 split_test_disagreements(u64 ell) {
  const PointCounter counter(ell);
  const u64 m = ell * ell;
  u64 bad = 0;
  for (u64 a = 0; a < m; ++a) {
    for (u64 b = 0; b < m; ++b) {
      const u64 ar = a % ell, br = b % ell;
      if ((ar == 0 && br == 0) || discriminant_mod(ell, ar, br) != 0) continue;
      if (node_is_split(ell, ar, br) != node_is_split_by_count(counter, ar, br)) ++bad;
    }
  }
  return bad;
}

inline void verify_tables(VerifyResult& out) {
  u64 worst_p = 0;
  Rational worst = 0;
  bool all = true;
  for (const auto& ref : kReferenceTable) {
    const Rational d = table_row_deviation(frak_S_counts(ref.p), ref);
    const bool pass = d <= table_tolerance();
    all = all && pass;
    if (!pass) out.add("tables", "row_p" + std::to_string(ref.p), false, "deviation " + to_scientific(d, 3, Rounding::Up));
    if (worst < d) {
      worst = d;
      worst_p = ref.p;
    }
  }
  out.add("tables", "reference_rows_7_to_149", all,
          "max deviation " + to_scientific(worst, 3, Rounding::Up) + " at p=" + std::to_string(worst_p));
}

inline void verify_oracles(VerifyResult& out) {
  {
    u64 failures = 0;
    for (u64 ell : primes_up_to(200)) {
      if (ell >= 5 && count_singular_residues(ell) != ell) ++failures;
    }
    out.add("oracles", "singular_count_equals_l", failures == 0, std::to_string(failures) + " primes disagree");
  }
  {
    u64 bad = 0;
    for (u64 ell : primes_up_to(50)) {
      if (ell >= 5) bad += split_test_disagreements(ell);
    }
    out.add("oracles", "split_test_dual_oracle", bad == 0, std::to_string(bad) + " disagreements");
  }
  {
    bool ok = true;
    for (u64 ell : {5, 7, 11, 13}) {
      Rational sum = rho_Igeq(ell, 51);
      for (long n = 1; n <= 50; ++n) sum += rho_In(ell, n);
      ok = ok && sum == rho_Igeq(ell, 1);
    }
    out.add("oracles", "kodaira_telescoping", ok);
  }
  {
    bool ok = true;
    for (u64 ell : {5, 7, 11}) {
      Rational total = rho_I0(ell) + rho_Igeq(ell, 1);
      const Rational additive = Rational(ell).pow(-2) - Rational(ell).pow(-10);
      ok = ok && total + additive == rho_M(ell);
    }
    out.add("oracles", "kodaira_classes_partition_minimal", ok);
  }
  {
    const std::vector<LocalPredicate> preds{predicates::in_Wv(5, 1, 2), predicates::kodaira_In(7, 1),
                                            predicates::kodaira_Igeq(11, 1), predicates::kodaira_I0(5)};
    u64 inside = 0;
    for (const auto& pr : preds) inside += montecarlo_local_measure(pr, 200000, 20240601).within_sigmas(4.0) ? 1 : 0;
    out.add("oracles", "montecarlo_against_closed_forms", inside == preds.size(),
            std::to_string(inside) + "/" + std::to_string(preds.size()) + " within 4 sigma");
  }
}

inline void verify_bounds(VerifyResult& out) {
  const std::vector<u64> primes{5, 7, 11, 13};
  bool positive = true, index_monotone = true, truncation = true, consistent = true, nested = true, conventions = true;
  for (u64 p : primes) {
    const auto counts = frak_S_counts(p);
    const u64 L = default_truncation(p);
    Rational previous = 0;
    for (long n = 1; n <= 3; ++n) {
      const auto g = lower_bound_g(p, n, L, counts);
      positive = positive && Rational(0) < g.value.lo();
      if (n > 1) index_monotone = index_monotone && g.value.lo() < previous;
      previous = g.value.lo();
      consistent = consistent && lower_bound_mu_lambda(p, n, L, counts).value == g.value &&
                   lower_bound_chi(p, n, L, counts).terms.e_n == g.terms.e_n;
      QInterval outer = g.value;
      for (u64 l2 = 2 * L; l2 <= 8 * L; l2 *= 2) {
        const auto refined = lower_bound_g(p, n, l2, counts);
        truncation = truncation && outer.lo() <= refined.value.lo();
        nested = nested && outer.contains(refined.value);
        outer = refined.value;
      }
    }
    conventions = conventions && sym_sum_e(0, p, L) == QInterval(Rational(1)) && sym_sum_e(-1, p, L) == QInterval(Rational(0));
  }
  out.add("bounds", "positivity", positive);
  out.add("bounds", "strictly_decreasing_in_n", index_monotone);
  out.add("bounds", "nondecreasing_under_truncation_doubling", truncation);
  out.add("bounds", "nested_under_refinement", nested);
  out.add("bounds", "mu_lambda_equals_g", consistent);
  out.add("bounds", "symmetric_sum_conventions", conventions);
}

inline VerifyResult run_verify(const std::string& suite) {
  VerifyResult r;
  if (suite == "all" || suite == "tables") verify_tables(r);
  if (suite == "all" || suite == "oracles") verify_oracles(r);
  if (suite == "all" || suite == "bounds") verify_bounds(r);
  return r;
}

}  // namespace ecstat
