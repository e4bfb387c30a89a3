#pragma once

// binavg command-line front end. Kept in a header so the test suite can drive
// run_cli() in-process.

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "binavg/binavg.hpp"

namespace binavg::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kDomainError = 3, kNonConvergence = 4 };

enum class Mode { Exact, Float, Auto };

/// Exact mode is used automatically only for short sweeps with rational inputs.
inline constexpr std::size_t kAutoExactMaxN = 60;

struct RunConfig {
  std::string command;
  std::string seq;
  std::string profile = "finite:1/3,1/3,1/3";
  std::string weight = "linear";
  std::string experiment;
  std::string r = "1/2";
  std::string r_prime;
  std::size_t N = 0;
  std::size_t k = 5;
  double tolerance = kDefaultTolerance;
  std::size_t window = kDefaultWindow;
  unsigned long n_max = 25;
  long cv_bound = 12;
  bool dump = false;
  bool rows = false;
  Mode mode = Mode::Auto;
  std::string out_path;
};

namespace detail {

template <RealField Real>
const char* mode_name() {
  return is_exact_v<Real> ? "exact" : "float";
}

/// Human-facing rendering of an estimate: exact p/q plus a decimal in Exact mode.
template <RealField Real>
std::string show_estimate(const Complex<Real>& z) {
  if constexpr (is_exact_v<Real>) {
    std::string s = format_complex(z);
    if (s.size() <= 24) return s;
    return format_complex(Complex<double>(to_double(z.re), to_double(z.im))) + " (exact value in sweep dump)";
  } else {
    return format_complex(z);
  }
}

template <RealField Real>
std::string describe(const LimitEstimate<Real>& e) {
  std::ostringstream os;
  os << show_estimate(e.value) << "  [" << (e.converged ? "converged" : "NOT converged") << ", N=" << e.N_used
     << ", window=" << e.window << ", max deviation " << format_real(e.max_window_deviation) << ", tol "
     << format_real(e.tolerance) << "]";
  return os.str();
}

inline const char* verdict(bool ok) { return ok ? "consistent with" : "inconsistent with"; }

template <RealField Real>
void write_sweep(std::ostream& os, const std::vector<Complex<Real>>& sweep) {
  os << "N,Re,Im\n";
  for (std::size_t N = 0; N < sweep.size(); ++N)
    os << N << ',' << format_real(sweep[N].re) << ',' << format_real(sweep[N].im) << '\n';
}

/// Output sink for CSV: --out file when given, else the command's stdout.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

template <RealField Real>
ExperimentParams<Real> params_of(const RunConfig& c) {
  return ExperimentParams<Real>{parse_real<Real>(c.r), c.N, c.tolerance, c.window};
}

// ---- avg -----------------------------------------------------------------

template <RealField Real>
int run_avg(const RunConfig& c, std::ostream& out) {
  auto x = parse_sequence<Real>(c.seq);
  Real r = parse_real<Real>(c.r);
  auto sweep = binomial_sweep(x, c.N, r);
  CsvSink sink(c.out_path, out);
  write_sweep(sink.stream(), sweep);
  return kOk;
}

// ---- counterexample ------------------------------------------------------

template <RealField Real>
int run_counterexample(const RunConfig& c, std::ostream& out) {
  auto x = parse_sequence<Real>(c.seq);
  auto lambda = parse_profile<Real>(c.profile);
  auto p = params_of<Real>(c);
  auto convolved = Sequence<Real>::convolved(x, lambda);

  out << "convolution-method counterexample (" << mode_name<Real>() << " mode)\n";
  out << "  sequence x      " << x.to_string() << "\n";
  out << "  profile lambda  " << lambda.to_string() << "\n";
  out << "  r               " << format_real(p.r) << "\n";
  out << "  convolved prefix (";
  auto pre = convolved.prefix(4);
  for (const auto& v : pre) out << format_complex(v) << ", ";
  out << "...)\n";

  auto rep = run_main_theorem_experiment(x, lambda, p);
  out << "  limit of E^Bin(r) x         L = " << describe(rep.input) << "\n";
  out << "  limit of E^Bin(r) convolved   = " << describe(rep.convolved) << "\n";
  out << "  correct_rhs    L * sum(lambda)                      = " << show_estimate(rep.correct_rhs)
      << "   gap " << format_real(rep.gap_correct) << "\n";
  out << "  incorrect_rhs  L * (lambda_0 + sum lambda_n r^(n-1)) = " << show_estimate(rep.incorrect_rhs)
      << "   gap " << format_real(rep.gap_incorrect) << "\n";

  const bool coincide = rep.consistent_with_correct && rep.consistent_with_incorrect;
  if (!rep.convolved.converged) {
    out << "verdict: inconclusive (convolved sweep did not converge)\n";
  } else if (coincide) {
    out << "verdict: formulas coincide for this input\n";
  } else if (rep.consistent_with_correct) {
    out << "verdict: incorrect formula refuted\n";
  } else {
    out << "verdict: estimate " << verdict(false) << " the correct formula at this tolerance\n";
  }
  if (c.dump) {
    CsvSink sink(c.out_path, out);
    write_sweep(sink.stream(), binomial_sweep(convolved, p.N_max, p.r));
  }
  return rep.convolved.converged ? kOk : kNonConvergence;
}

// ---- compose -------------------------------------------------------------

template <RealField Real>
int run_compose(const RunConfig& c, std::ostream& out) {
  auto x = parse_sequence<Real>(c.seq);
  auto p = params_of<Real>(c);
  out << "experiment " << c.experiment << " (" << mode_name<Real>() << " mode)\n";
  out << "  sequence x  " << x.to_string() << "\n";
  out << "  r           " << format_real(p.r) << "\n";
  bool converged = true;
  std::optional<Sequence<Real>> dumped;

  if (c.experiment == "main") {
    auto lambda = parse_profile<Real>(c.profile);
    out << "  profile     " << lambda.to_string() << "\n";
    auto rep = run_main_theorem_experiment(x, lambda, p);
    out << "  L (limit of E^Bin(r) x)      = " << describe(rep.input) << "\n";
    out << "  limit for convolved sequence = " << describe(rep.convolved) << "\n";
    out << "  correct_rhs   = " << show_estimate(rep.correct_rhs) << "   gap " << format_real(rep.gap_correct)
        << "  -> " << verdict(rep.consistent_with_correct) << " L*sum(lambda)\n";
    out << "  incorrect_rhs = " << show_estimate(rep.incorrect_rhs) << "   gap " << format_real(rep.gap_incorrect)
        << "  -> " << verdict(rep.consistent_with_incorrect) << " L*(lambda_0+sum lambda_n r^(n-1))\n";
    converged = rep.convolved.converged;
    dumped = Sequence<Real>::convolved(x, lambda);
  } else if (c.experiment == "shift") {
    auto rep = run_shift_invariance_experiment(x, c.k, p);
    out << "  depth 0: " << describe(rep.base) << "\n";
    for (std::size_t j = 0; j < rep.shifted.size(); ++j) {
      out << "  depth " << j + 1 << ": " << describe(rep.shifted[j]) << "   gap " << format_real(rep.gaps[j]) << "\n";
      converged = converged && rep.shifted[j].converged;
    }
    out << "  -> " << verdict(rep.consistent) << " shift invariance\n";
    dumped = Sequence<Real>::shift_right(x, c.k);
  } else if (c.experiment == "rindep") {
    if (c.r_prime.empty()) throw ParseError("--r-prime is required for the rindep experiment");
    Real r_prime = parse_real<Real>(c.r_prime);
    auto rep = run_r_independence_experiment(x, r_prime, p);
    out << "  limit at r  = " << describe(rep.at_r) << "\n";
    out << "  limit at r' = " << describe(rep.at_r_prime) << "   (r' = " << format_real(rep.r_prime) << ")\n";
    out << "  gap " << format_real(rep.gap) << "  -> " << verdict(rep.consistent) << " r-independence\n";
    converged = rep.at_r_prime.converged;
    dumped = x;
  } else if (c.experiment == "weighted") {
    auto W = parse_weight_function<Real>(c.weight);
    out << "  W           " << W.to_string() << "\n";
    auto rep = run_weighted_composition_experiment(W, x, p);
    out << "  L (limit of E^Bin(r) x)             = " << describe(rep.input) << "\n";
    out << "  limit of E^Bin(r) of n -> E^W_n(x)  = " << describe(rep.composed) << "\n";
    out << "  gap " << format_real(rep.gap) << "  -> " << verdict(rep.consistent) << " the limit L\n";
    converged = rep.composed.converged;
    if (c.dump) {
      CsvSink sink(c.out_path, out);
      auto y = weighted_average_sweep(W, x, p.N_max);
      write_sweep(sink.stream(), binomial_sweep_values<Real>(y, p.N_max, p.r));
    }
  } else {
    throw ParseError("unknown experiment '" + c.experiment + "' (main, shift, rindep, weighted)");
  }
  if (c.dump && dumped) {
    CsvSink sink(c.out_path, out);
    write_sweep(sink.stream(), binomial_sweep(*dumped, p.N_max, p.r));
  }
  return converged ? kOk : kNonConvergence;
}

// ---- verify-identities ---------------------------------------------------

inline int run_verify_identities(const RunConfig& c, std::ostream& out) {
  if (c.mode == Mode::Float) throw ModeError("identity checks are exact-integer only");
  auto star_star = verify_star_star(c.n_max);
  out << "identity checks (exact integers)\n";
  out << "  " << star_star.identity << " over " << star_star.ranges << ": " << star_star.checked << " triples, "
      << star_star.violations.size() << " violations\n";
  auto unit = verify_unit_slice(c.n_max);
  out << "  " << unit.identity << " over " << unit.ranges << ": " << unit.checked << " pairs, "
      << unit.violations.size() << " violations\n";
  if (c.n_max >= 3) {
    auto first = find_star_violation(c.n_max);
    if (first)
      out << "  first (n,k,l) with alternating_sum != 1: (" << first->n << "," << first->k << "," << first->l
          << ") lhs=" << first->lhs.get_str() << "\n";
    else
      out << "  no (n,k,l) with alternating_sum != 1 up to n=" << c.n_max << "\n";
  }
  auto cv = verify_chu_vandermonde(c.cv_bound);
  out << "  Chu-Vandermonde over |a|,|b|,r <= " << cv.bound << ": " << cv.checked << " cases, "
      << cv.violations.size() << " nonzero residuals\n";
  if (c.rows) {
    CsvSink sink(c.out_path, out);
    auto& os = sink.stream();
    os << "n,k,l,lhs,rhs,ok\n";
    for (const auto& row : star_star_rows(c.n_max))
      os << row.n << ',' << row.k << ',' << row.l << ',' << row.lhs.get_str() << ',' << row.rhs.get_str() << ','
         << (row.ok() ? "true" : "false") << '\n';
  }
  return star_star.all_hold() && unit.all_hold() && cv.all_hold() ? kOk : kDomainError;
}

template <template <class> class Runner>
int dispatch(const RunConfig& c, std::ostream& out) {
  switch (c.mode) {
    case Mode::Exact:
      return Runner<Rational>::run(c, out);
    case Mode::Float:
      return Runner<double>::run(c, out);
    case Mode::Auto:
      break;
  }
  if (c.N <= kAutoExactMaxN) {
    // Validate every input in exact mode before writing anything, so that a
    // fallback to float never leaves partial exact output behind.
    bool rational = true;
    try {
      Runner<Rational>::validate(c);
    } catch (const ModeError&) {
      rational = false;
    } catch (const ParseError&) {
      rational = false;
    }
    if (rational) return Runner<Rational>::run(c, out);
  }
  return Runner<double>::run(c, out);
}

template <class Real>
void validate_inputs(const RunConfig& c) {
  if (!c.seq.empty()) (void)parse_sequence<Real>(c.seq);
  (void)parse_real<Real>(c.r);
  if (!c.r_prime.empty()) (void)parse_real<Real>(c.r_prime);
  if (c.command == "counterexample" || c.experiment == "main") (void)parse_profile<Real>(c.profile);
  if (c.experiment == "weighted") (void)parse_weight_function<Real>(c.weight);
}

template <class Real>
struct AvgRunner {
  static int run(const RunConfig& c, std::ostream& out) { return run_avg<Real>(c, out); }
  static void validate(const RunConfig& c) { validate_inputs<Real>(c); }
};
template <class Real>
struct CounterexampleRunner {
  static int run(const RunConfig& c, std::ostream& out) { return run_counterexample<Real>(c, out); }
  static void validate(const RunConfig& c) { validate_inputs<Real>(c); }
};
template <class Real>
struct ComposeRunner {
  static int run(const RunConfig& c, std::ostream& out) { return run_compose<Real>(c, out); }
  static void validate(const RunConfig& c) { validate_inputs<Real>(c); }
};

}  // namespace detail

/// Runs one CLI invocation. argv[0] is the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"binomial (Euler) averages, convolution methods and W-weighted averages"};
  app.require_subcommand(1);
  RunConfig c;

  const std::map<std::string, Mode> modes{{"exact", Mode::Exact}, {"float", Mode::Float}, {"auto", Mode::Auto}};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", c.mode, "arithmetic: exact, float or auto")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    sub->add_option("--out", c.out_path, "write CSV output to this file instead of stdout");
  };
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tolerance, "convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--window", c.window, "convergence window")->check(CLI::PositiveNumber);
    sub->add_flag("--dump", c.dump, "append the sweep as N,Re,Im CSV");
  };

  auto* avg = app.add_subcommand("avg", "E^Bin(r) sweep of a sequence as N,Re,Im rows");
  avg->add_option("--seq", c.seq, "sequence spec")->required();
  avg->add_option("--r", c.r, "r in (0,1)")->required();
  avg->add_option("--N", c.N, "largest N")->required();
  add_common(avg);

  auto* ce = app.add_subcommand("counterexample", "reproduce the limit-formula counterexample");
  c.seq = "const:1";
  c.N = kAutoExactMaxN;
  ce->add_option("--seq", c.seq, "sequence spec")->capture_default_str();
  ce->add_option("--profile", c.profile, "lambda profile")->capture_default_str();
  ce->add_option("--r", c.r, "r in (0,1)")->capture_default_str();
  ce->add_option("--N", c.N, "sweep length")->capture_default_str();
  add_common(ce);
  add_limit(ce);

  auto* ids = app.add_subcommand("verify-identities", "exhaustive binomial identity checks");
  ids->add_option("--n-max", c.n_max, "largest n")->capture_default_str()->check(CLI::Range(2ul, 200ul));
  ids->add_option("--cv-bound", c.cv_bound, "Chu-Vandermonde bound on |a|,|b|,r")->capture_default_str()->check(CLI::Range(0l, 60l));
  ids->add_flag("--rows", c.rows, "emit n,k,l,lhs,rhs,ok CSV rows");
  add_common(ids);

  auto* comp = app.add_subcommand("compose", "limit experiments: main, shift, rindep, weighted");
  comp->add_option("--experiment", c.experiment, "main | shift | rindep | weighted")
      ->required()
      ->check(CLI::IsMember({"main", "shift", "rindep", "weighted"}));
  comp->add_option("--seq", c.seq, "sequence spec")->capture_default_str();
  comp->add_option("--profile", c.profile, "lambda profile (main)")->capture_default_str();
  comp->add_option("--W", c.weight, "weight function (weighted)")->capture_default_str();
  comp->add_option("--r", c.r, "r in (0,1)")->capture_default_str();
  comp->add_option("--r-prime", c.r_prime, "r' < r (rindep)");
  comp->add_option("--k", c.k, "largest shift depth (shift)")->capture_default_str();
  comp->add_option("--N", c.N, "sweep length")->capture_default_str();
  add_common(comp);
  add_limit(comp);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (avg->parsed()) {
      c.command = "avg";
      return detail::dispatch<detail::AvgRunner>(c, out);
    }
    if (ce->parsed()) {
      c.command = "counterexample";
      return detail::dispatch<detail::CounterexampleRunner>(c, out);
    }
    if (ids->parsed()) {
      c.command = "verify-identities";
      return detail::run_verify_identities(c, out);
    }
    c.command = "compose";
    return detail::dispatch<detail::ComposeRunner>(c, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::out_of_range& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace binavg::cli
