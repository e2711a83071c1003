#pragma once

// Command-line front end. run_cli is the whole program; main() only forwards
// to it, so tests drive it with string streams.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ecstat/bounds.hpp"
#include "ecstat/density.hpp"
#include "ecstat/error.hpp"
#include "ecstat/ffcurve.hpp"
#include "ecstat/montecarlo.hpp"
#include "ecstat/reference_tables.hpp"
#include "ecstat/report_json.hpp"
#include "ecstat/survey.hpp"
#include "ecstat/verify.hpp"
#include "ecstat/version.hpp"

namespace ecstat {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

namespace cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes to --out when given, otherwise to the command's output stream.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : out_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot open " + path + " for writing");
    out_ = file_.get();
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
};

inline unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return std::max(1U, *flag);
  if (const char* env = std::getenv("ECSTAT_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw UsageError("ECSTAT_THREADS must be a positive integer");
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct TablesArgs {
  u64 pmin = 7;
  u64 pmax = 149;
  std::string format = "csv";
  bool compare = false;
  std::string out;
};

inline int cmd_tables(const TablesArgs& a, std::ostream& out, std::ostream& err) {
  if (a.pmax < a.pmin) throw UsageError("--pmax must be >= --pmin");
  if (a.pmin < 5) throw UsageError("--pmin must be >= 5");
  if (a.pmax >= kMaxFieldPrime) throw UsageError("--pmax must be < 2^20");
  Sink sink(out, a.out);
  auto& os = sink.stream();
  bool mismatch = false;
  ordered_json rows = ordered_json::array();
  if (a.format == "csv") {
    os << "p,count_S,count_Sprime,density_S,density_Sprime";
    if (a.compare) os << ",reference_S,reference_Sprime,max_deviation,status";
    os << '\n';
  }
  for (u64 p : primes_up_to(a.pmax)) {
    if (p < a.pmin || p < 5) continue;
    const auto c = frak_S_counts(p);
    const auto ref = reference_row(p);
    std::string status = "no-reference";
    std::optional<Rational> dev;
    if (a.compare && ref) {
      dev = table_row_deviation(c, *ref);
      const bool ok = *dev <= table_tolerance();
      status = ok ? "match" : "mismatch";
      mismatch = mismatch || !ok;
    }
    if (a.format == "csv") {
      os << p << ',' << c.count_S << ',' << c.count_Sprime << ',' << to_decimal(c.density_S, 15) << ','
         << to_decimal(c.density_Sprime, 15);
      if (a.compare) {
        if (ref) os << ',' << ref->density_S << ',' << ref->density_Sprime << ',' << to_scientific(*dev, 3, Rounding::Up);
        else os << ",,,";
        os << ',' << status;
      }
      os << '\n';
    } else {
      auto row = to_json(c);
      if (a.compare) {
        if (ref) {
          row["reference_S"] = ref->density_S;
          row["reference_Sprime"] = ref->density_Sprime;
          row["max_deviation"] = to_scientific(*dev, 3, Rounding::Up);
        }
        row["status"] = status;
      }
      rows.push_back(row);
    }
  }
  if (a.format == "json") {
    auto j = header_json("tables");
    j["pmin"] = a.pmin;
    j["pmax"] = a.pmax;
    j["rows"] = rows;
    if (a.compare) j["tolerance"] = "1e-12";
    os << j.dump(2) << '\n';
  }
  if (mismatch) {
    err << "ecstat: table rows deviate from the reference decimals by more than 1e-12\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

struct BoundsArgs {
  u64 p = 7;
  long n = 1;
  int theorem = 64;
  std::optional<u64> trunc;
  std::string out;
};

inline int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const u64 L = a.trunc.value_or(default_truncation(a.p));
  BoundReport r;
  switch (a.theorem) {
    case 53: r = lower_bound_chi(a.p, a.n, L); break;
    case 64: r = lower_bound_g(a.p, a.n, L); break;
    case 65: r = lower_bound_mu_lambda(a.p, a.n, L); break;
    default: throw UsageError("--theorem must be 53, 64 or 65");
  }
  Sink sink(out, a.out);
  sink.stream() << to_json(r).dump(2) << '\n';
  return kExitOk;
}

struct DensitiesArgs {
  u64 ell = 5;
  std::string type = "In";
  long n = 1;
  std::vector<u64> sigma;
  std::optional<u64> trunc;
  std::string out;
};

inline int cmd_densities(const DensitiesArgs& a, std::ostream& out) {
  auto j = header_json("density");
  Rational local;
  if (a.type == "M") local = rho_M(a.ell);
  else if (a.type == "I0") local = rho_I0(a.ell);
  else if (a.type == "In") local = rho_In(a.ell, a.n);
  else if (a.type == "Igeq") local = rho_Igeq(a.ell, a.n);
  else throw UsageError("--type must be one of I0, In, Igeq, M");
  j["ell"] = a.ell;
  j["type"] = a.type;
  if (a.type == "In" || a.type == "Igeq") j["n"] = a.n;
  j["local_measure"] = rational_json(local);
  j["given_minimal"] = rational_json(local / rho_M(a.ell));
  if (!a.sigma.empty()) {
    const u64 L = a.trunc.value_or(kDefaultZeta10Truncation);
    ordered_json s;
    s["sigma"] = a.sigma;
    s["n"] = a.n;
    s["L"] = L;
    s["density"] = interval_json(sigma_n_density(a.sigma, a.n, L));
    j["sigma_density"] = s;
  }
  Sink sink(out, a.out);
  sink.stream() << j.dump(2) << '\n';
  return kExitOk;
}

struct SurveyArgs {
  i64 x = 1'000'000;
  u64 p = 7;
  u64 seed = 1;
  std::string csv;
  std::vector<u64> ells{5, 7};
  long nmax = 3;
  bool kodaira_only_first = false;
  u64 mc_samples = 100'000;
  std::optional<unsigned> threads;
  std::optional<u64> trunc;
  std::string out;
};

inline ordered_json survey_summary(const SurveyArgs& a, const SurveyTotals& t, unsigned threads) {
  const u64 L = a.trunc.value_or(default_truncation(a.p));
  auto j = header_json("survey");
  j["x"] = a.x;
  j["p"] = a.p;
  j["seed"] = a.seed;
  j["L"] = L;
  j["primary_congruence"] = a.kodaira_only_first ? "kodaira_only" : "strict";
  j["counts"] = to_json(t);
  j["bad_at_2_or_3_fraction"] = rational_json(t.E_count ? Rational(Integer(t.bad2or3), Integer(t.E_count)) : Rational(0));

  ordered_json emp = ordered_json::array();
  emp.push_back(to_json(minimality_comparison(t)));
  emp.push_back(to_json(singular_comparison(t)));
  for (u64 ell : a.ells) {
    for (long n = 1; n <= a.nmax; ++n) emp.push_back(to_json(kodaira_comparison(t, ell, n)));
  }
  j["densities"] = emp;

  const auto counts = frak_S_counts(a.p);
  ordered_json g = ordered_json::array(), xi = ordered_json::array();
  const auto first = a.kodaira_only_first ? CongruencePredicate::KodairaOnly : CongruencePredicate::Strict;
  const auto second = a.kodaira_only_first ? CongruencePredicate::Strict : CongruencePredicate::KodairaOnly;
  for (long n = 1; n <= a.nmax; ++n) {
    const auto bound = lower_bound_g(a.p, n, L, counts);
    g.push_back(to_json(g_comparison(t, n, bound, first)));
    g.push_back(to_json(g_comparison(t, n, bound, second)));
  }
  for (long n = 0; n <= a.nmax; ++n) xi.push_back(to_json(xi_comparison(t, n, lower_bound_chi(a.p, n, L, counts))));
  j["g_lower_bound_checks"] = g;
  j["xi_lower_bound_checks"] = xi;

  if (a.mc_samples > 0) {
    ordered_json mc = ordered_json::array();
    for (u64 ell : a.ells) {
      for (long n = 1; n <= a.nmax; ++n) {
        mc.push_back(to_json(montecarlo_local_measure(predicates::kodaira_In(ell, static_cast<unsigned>(n)), a.mc_samples, a.seed, threads)));
      }
    }
    j["montecarlo"] = mc;
  }
  return j;
}

inline int cmd_survey(const SurveyArgs& a, std::ostream& out) {
  if (a.nmax < 1) throw UsageError("--nmax must be >= 1");
  if (a.mc_samples != 0 && a.mc_samples < 1000) throw UsageError("--mc-samples must be 0 or >= 1000");
  const unsigned threads = resolve_threads(a.threads);
  std::unique_ptr<std::ofstream> csv;
  if (!a.csv.empty()) {
    csv = std::make_unique<std::ofstream>(a.csv);
    if (!*csv) throw UsageError("cannot open " + a.csv + " for writing");
  }
  SurveyConfig cfg;
  cfg.x = a.x;
  cfg.p = a.p;
  cfg.ells = a.ells;
  cfg.threads = threads;
  cfg.csv = csv.get();
  const auto totals = run_survey(cfg);
  if (csv && !csv->flush()) throw UsageError("write to " + a.csv + " failed");
  Sink sink(out, a.out);
  sink.stream() << survey_summary(a, totals, threads).dump(2) << '\n';
  return kExitOk;
}

inline int cmd_verify(const std::string& suite, const std::string& path, std::ostream& out) {
  const auto r = run_verify(suite);
  Sink sink(out, path);
  auto& os = sink.stream();
  for (const auto& l : r.lines) {
    os << (l.pass ? "PASS " : "FAIL ") << l.suite << '/' << l.name;
    if (!l.detail.empty()) os << "  (" << l.detail << ')';
    os << '\n';
  }
  os << (r.ok() ? "verify: all checks passed\n" : "verify: some checks failed\n");
  return r.ok() ? kExitOk : kExitVerifyFailed;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ecstat: statistics of Tamagawa numbers and Iwasawa invariants of elliptic curves"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  cli::TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "counts of S_p and S'_p residue classes");
  tables->add_option("--pmin", ta.pmin, "smallest prime")->capture_default_str();
  tables->add_option("--pmax", ta.pmax, "largest prime")->capture_default_str();
  tables->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  tables->add_flag("--compare-paper", ta.compare, "diff against the embedded reference decimals");
  tables->add_option("--out", ta.out, "output path");

  cli::BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "certified lower bound for a density");
  bounds->add_option("--p", ba.p)->required();
  bounds->add_option("--n", ba.n)->required();
  bounds->add_option("--theorem", ba.theorem)->check(CLI::IsMember({53, 64, 65}))->capture_default_str();
  bounds->add_option("--trunc", ba.trunc, "prime truncation L (default 10p + 100)");
  bounds->add_option("--out", ba.out);

  cli::DensitiesArgs da;
  auto* dens = app.add_subcommand("densities", "local Kodaira densities");
  dens->add_option("--ell", da.ell)->required();
  dens->add_option("--type", da.type)->check(CLI::IsMember({"I0", "In", "Igeq", "M"}))->capture_default_str();
  dens->add_option("--n", da.n)->capture_default_str();
  dens->add_option("--sigma", da.sigma, "primes with type I_n imposed")->delimiter(',');
  dens->add_option("--trunc", da.trunc);
  dens->add_option("--out", da.out);

  cli::SurveyArgs sa;
  auto* survey = app.add_subcommand("survey", "census of curves of height <= x");
  survey->add_option("--x", sa.x)->required();
  survey->add_option("--p", sa.p)->capture_default_str();
  survey->add_option("--seed", sa.seed)->capture_default_str();
  survey->add_option("--csv", sa.csv, "per-curve CSV output path");
  survey->add_option("--ells", sa.ells, "primes with tracked Kodaira statistics")->delimiter(',');
  survey->add_option("--nmax", sa.nmax)->capture_default_str();
  survey->add_flag("--paper-congruence", sa.kodaira_only_first, "list the Kodaira-only congruence first");
  survey->add_option("--mc-samples", sa.mc_samples)->capture_default_str();
  survey->add_option("--threads", sa.threads);
  survey->add_option("--trunc", sa.trunc);
  survey->add_option("--out", sa.out);

  std::string suite = "all", verify_out;
  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "tables", "oracles", "bounds"}))->capture_default_str();
  verify->add_option("--out", verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ecstat: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*tables) return cli::cmd_tables(ta, out, err);
    if (*bounds) return cli::cmd_bounds(ba, out);
    if (*dens) return cli::cmd_densities(da, out);
    if (*survey) return cli::cmd_survey(sa, out);
    if (*verify) return cli::cmd_verify(suite, verify_out, out);
  } catch (const cli::UsageError& e) {
    err << "ecstat: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "ecstat: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ecstat
