// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <binavg/binavg.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracle.hpp"

using namespace binavg;

namespace {

using Seq = Sequence<Rational>;
using Seqf = Sequence<double>;

ExactScalar q(long p, long d = 1) { return ExactScalar(oracle::rat(p, d)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0) {
    std::ostringstream lim;
    lim << "runtime " << secs << " s >= " << time_limit_s << " s";
    o.require(secs < time_limit_s, lim.str());
  }
  std::printf("[%s] criterion %d: %s (%.3f s)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

Seq random_bounded(oracle::RationalGen& gen, std::size_t n) { return Seq::from_values("random", gen.values(n)); }

}  // namespace

int main() {
  criterion(1, "convolution counterexample reproduced", 1.0, [](Outcome& o) {
    auto lambda = WeightProfile<Rational>::finite({q(1, 3), q(1, 3), q(1, 3)});
    auto conv = Seq::convolved(Seq::constant(q(1)), lambda);
    o.require(conv.prefix(4) == std::vector<ExactScalar>{q(1, 3), q(2, 3), q(1), q(1), q(1)}, "prefix");
    auto sweep = binomial_sweep(conv, 100, oracle::rat(1, 2));
    double worst = 0;
    for (std::size_t N = 0; N <= 100; ++N) {
      Rational closed = 1 - Rational(static_cast<long>(N + 2)) / (3 * pow(Rational(2), N));
      o.require(sweep[N] == ExactScalar(closed), "closed form at N=" + std::to_string(N));
      if (N >= 60) worst = std::max(worst, magnitude(sweep[N] - q(1)));
    }
    o.detail << " max|E_N-1| (N>=60) = " << worst << ";";
    o.require(worst < 1e-9, "|E_N - 1| < 1e-9");
    auto bad = incorrect_rhs(lambda, oracle::rat(1, 2), q(1));
    auto good = correct_rhs(lambda, q(1));
    o.detail << " incorrect_rhs = " << format_complex(bad) << ", correct_rhs = " << format_complex(good);
    o.require(bad == q(5, 6), "incorrect_rhs == 5/6");
    o.require(good == q(1), "correct_rhs == 1");
  });

  criterion(2, "binomial identity suite", 5.0, [](Outcome& o) {
    auto ss = verify_star_star(25);
    o.detail << " closed form: " << ss.checked << " triples, " << ss.violations.size() << " violations;";
    o.require(ss.all_hold(), "closed form holds");
    auto first = find_star_violation(25);
    o.require(first.has_value(), "a violation exists");
    if (first) {
      o.detail << " first violation (" << first->n << "," << first->k << "," << first->l << ") lhs=" << first->lhs.get_str()
               << ";";
      o.require(first->n == 3 && first->k == 0 && first->l == 2, "first violation at (3,0,2)");
      o.require(first->lhs == 3, "first violation has lhs 3");
    }
    o.require(verify_unit_slice(25).all_hold(), "l = 1 slice is 1");
    auto cv = verify_chu_vandermonde(12);
    o.detail << " Chu-Vandermonde: " << cv.checked << " cases, " << cv.violations.size() << " nonzero";
    o.require(cv.all_hold(), "Chu-Vandermonde residual 0");
  });

  criterion(3, "recurrences are exact on random rational sequences", 30.0, [](Outcome& o) {
    oracle::RationalGen gen(2024);
    std::size_t checks = 0, nonzero = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_bounded(gen, 41);
      Rational r = oracle::rat(1 + trial % 9, 10);
      for (std::size_t N = 1; N <= 30; ++N) {
        nonzero += !check_one_step_recurrence(x, N, r).is_zero();
        ++checks;
        for (std::size_t k = 1; k <= 10; ++k) {
          nonzero += !check_k_step_expansion(x, N, k, r).is_zero();
          ++checks;
        }
      }
    }
    o.detail << " " << checks << " checks, " << nonzero << " nonzero residuals";
    o.require(nonzero == 0, "all residuals exactly 0");
  });

  criterion(4, "sup bound for the shifted sequence", 0, [](Outcome& o) {
    oracle::RationalGen gen(4242);
    std::size_t runs = 0, failed = 0;
    double tightest = INFINITY;
    for (int trial = 0; trial < 20; ++trial) {
      auto x = random_bounded(gen, 201);
      for (const Rational& r : {oracle::rat(1, 4), oracle::rat(1, 2), oracle::rat(3, 4)}) {
        auto rep = check_sup_bound(x, 200, r);
        ++runs;
        failed += !rep.holds;
        for (double m : rep.margins) tightest = std::min(tightest, m);
      }
    }
    o.detail << " " << runs << " runs, " << failed << " failing, smallest margin " << tightest;
    o.require(failed == 0, "bound holds for all N <= 200");
  });

  criterion(5, "main theorem surrogate", 0, [](Outcome& o) {
    auto x = Seqf::sum(Seqf::constant(FloatScalar(1)), Seqf::geometric(FloatScalar(-1)));
    auto rep = run_main_theorem_experiment(x, WeightProfile<double>::geometric_tail(FloatScalar(0.5), 0.5),
                                           ExperimentParams<double>{0.5, 200, kDefaultTolerance, 10});
    o.detail << " estimate " << format_complex(rep.convolved.value) << ", gap " << rep.gap_correct;
    o.require(rep.gap_correct <= 1e-6, "within 1e-6 of 1");
  });

  criterion(6, "shift invariance for depths 1..5", 0, [](Outcome& o) {
    auto x = Seqf::sum(Seqf::constant(FloatScalar(1)), Seqf::geometric(FloatScalar(-1)));
    auto rep = run_shift_invariance_experiment(x, 5, ExperimentParams<double>{0.5, 100});
    double worst = 0;
    for (const auto& est : rep.shifted) {
      worst = std::max(worst, magnitude(est.value - FloatScalar(1)));
      o.require(est.converged, "converged");
    }
    o.detail << " max gap to 1: " << worst;
    o.require(worst <= 1e-8, "within 1e-8 of 1");
  });

  criterion(7, "limit independent of r", 0, [](Outcome& o) {
    ExperimentParams<double> p{0.7, 100};
    auto thirds = Seqf::convolved(Seqf::constant(FloatScalar(1)), WeightProfile<double>::finite({FloatScalar(1.0 / 3),
                                                                                                 FloatScalar(1.0 / 3),
                                                                                                 FloatScalar(1.0 / 3)}));
    auto a = run_r_independence_experiment(thirds, 0.3, p);
    auto b = run_r_independence_experiment(Seqf::geometric(FloatScalar(-1)), 0.3, p);
    o.detail << " gaps " << a.gap << ", " << b.gap;
    o.require(a.gap <= 1e-6 && a.at_r_prime.converged, "convolved sequence");
    o.require(b.gap <= 1e-6 && b.at_r_prime.converged, "alternating sequence");
  });

  criterion(8, "weighted averages", 0, [](Outcome& o) {
    oracle::RationalGen gen(88);
    auto w = WeightFunction<Rational>::power(Rational(2));
    auto lambda = lambda_profile_of(w);
    bool exact = true;
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_bounded(gen, 41);
      for (std::size_t N = 1; N <= 40; ++N) exact = exact && equivalence_residual(w, x, N) == -(lambda.at(N) * x.eval(0));
    }
    o.require(exact, "Power(2) residual == -lambda_N x_0");

    auto we = WeightFunction<double>::power(std::exp(1.0));
    auto alt = Seqf::periodic({FloatScalar(1), FloatScalar(-1)});
    double r20 = magnitude(equivalence_residual(we, alt, 20)), r60 = magnitude(equivalence_residual(we, alt, 60));
    o.detail << " Power(e) residual N=20: " << r20 << ", N=60: " << r60 << ";";
    o.require(r60 < 1e-3 && r60 < r20, "Power(e) residual shrinks below 1e-3");

    auto rep = run_weighted_composition_experiment(WeightFunction<double>::linear(), Seqf::geometric(FloatScalar(-1)),
                                                   ExperimentParams<double>{0.5, 200});
    o.detail << " linear composition estimate " << format_complex(rep.composed.value);
    o.require(magnitude(rep.composed.value) <= 1e-3, "linear composition within 1e-3 of 0 at N_max=200");
  });

  criterion(9, "float weight rows sum to 1", 10.0, [](Outcome& o) {
    double worst = 0;
    for (int i = 1; i <= 9; ++i) {
      BinomialRow<double> row(i / 10.0);
      for (std::size_t N = 1; N <= 10000; ++N) {
        row.advance();
        worst = std::max(worst, std::abs(row.total() - 1.0));
      }
    }
    o.detail << " max |sum - 1| = " << worst;
    o.require(worst <= 1e-12, "drift <= 1e-12");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
