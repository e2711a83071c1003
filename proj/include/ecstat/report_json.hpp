#pragma once

// JSON encodings of reports. Lower endpoints are rendered rounded down and
// upper endpoints rounded up, so printed decimals stay valid enclosures.

#include <json.hpp>

#include "ecstat/bounds.hpp"
#include "ecstat/ffcurve.hpp"
#include "ecstat/montecarlo.hpp"
#include "ecstat/rational.hpp"
#include "ecstat/survey.hpp"
#include "ecstat/version.hpp"

namespace ecstat {

using nlohmann::ordered_json;

inline constexpr unsigned kDisplayDigits = 20;

inline ordered_json header_json(std::string_view kind) {
  return ordered_json{{"tool", "ecstat"}, {"version", kVersion}, {"schema", kSchemaVersion}, {"kind", kind}};
}

inline ordered_json rational_json(const Rational& r) {
  return ordered_json{{"rational", r.str()}, {"decimal", to_scientific(r, kDisplayDigits)}};
}

inline ordered_json interval_json(const QInterval& iv) {
  return ordered_json{{"lo", to_scientific(iv.lo(), kDisplayDigits, Rounding::Down)},
                      {"hi", to_scientific(iv.hi(), kDisplayDigits, Rounding::Up)}};
}

inline ordered_json to_json(const BoundReport& r) {
  auto j = header_json("bound");
  j["theorem"] = to_string(r.theorem);
  j["p"] = r.params.p;
  j["n"] = r.params.n;
  j["L"] = r.params.L;
  j["lower_bound_decimal"] = to_scientific(r.value.lo(), kDisplayDigits, Rounding::Down);
  j["lower_bound_rational_lo"] = r.value.lo().str();
  j["upper_enclosure_decimal"] = to_scientific(r.value.hi(), kDisplayDigits, Rounding::Up);
  ordered_json terms;
  terms["zeta_recip"] = interval_json(r.terms.zeta_recip);
  terms["e_n"] = interval_json(r.terms.e_n);
  terms["e_n"]["index"] = r.params.n;
  terms["e_aux"] = interval_json(r.terms.e_aux);
  terms["e_aux"]["index"] = r.terms.aux_index;
  terms["S_p"] = rational_json(r.terms.S_p);
  terms["S_p_prime"] = rational_json(r.terms.S_p_prime);
  j["terms"] = terms;
  j["notes"] = r.notes;
  return j;
}

inline ordered_json to_json(const FrakSCounts& c) {
  return ordered_json{{"p", c.p},
                      {"count_S", c.count_S},
                      {"count_Sprime", c.count_Sprime},
                      {"count_singular", c.count_singular},
                      {"count_excluded", c.count_excluded},
                      {"density_S", to_decimal(c.density_S, 15)},
                      {"density_Sprime", to_decimal(c.density_Sprime, 15)}};
}

inline ordered_json to_json(const Comparison& c) {
  return ordered_json{{"name", c.name},
                      {"numerator", c.numerator},
                      {"denominator", c.denominator},
                      {"empirical", rational_json(c.empirical)},
                      {"theoretical", interval_json(c.theoretical)},
                      {"absolute_gap", to_scientific(c.absolute_gap, 6, Rounding::Up)}};
}

inline ordered_json to_json(const OneSidedCheck& c) {
  return ordered_json{{"name", c.name},
                      {"n", c.n},
                      {"numerator", c.numerator},
                      {"denominator", c.denominator},
                      {"empirical", rational_json(c.empirical)},
                      {"lower_bound", to_scientific(c.bound, kDisplayDigits, Rounding::Down)},
                      {"slack", c.slack.str()},
                      {"status", to_string(c.status)}};
}

inline ordered_json to_json(const MonteCarloEstimate& m) {
  ordered_json j{{"predicate", m.name},
                 {"samples", m.samples},
                 {"hits", m.hits},
                 {"estimate", m.estimate},
                 {"std_error", m.std_error}};
  if (m.exact_measure) {
    j["exact"] = rational_json(*m.exact_measure);
    j["within_4_sigma"] = m.within_sigmas(4.0);
  }
  return j;
}

inline ordered_json histogram_json(const std::map<unsigned, u64>& h) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

inline ordered_json to_json(const SurveyTotals& t) {
  ordered_json kod = ordered_json::object();
  for (const auto& [ell, tally] : t.kodaira) {
    kod[std::to_string(ell)] = ordered_json{
        {"I0", tally.good}, {"additive", tally.additive}, {"multiplicative", histogram_json(tally.mult)}};
  }
  return ordered_json{{"W_count", t.W_count},
                      {"singular", t.singular},
                      {"nonminimal", t.nonminimal},
                      {"E_count", t.E_count},
                      {"bad_at_2_or_3", t.bad2or3},
                      {"eligible", t.eligible},
                      {"bad_at_p", t.bad_at_p},
                      {"non_ordinary", t.non_ordinary},
                      {"ordinary", t.ordinary},
                      {"anomalous", t.anomalous},
                      {"torsion_uncertified", t.torsion_uncertified},
                      {"counted", t.counted},
                      {"kodaira", kod},
                      {"frak_c_strict", histogram_json(t.c_strict)},
                      {"frak_c_kodaira_only", histogram_json(t.c_kodaira_only)},
                      {"xi_valuation", histogram_json(t.xi)}};
}

}  // namespace ecstat
