#pragma once

// Finite-N surrogates for limit statements about binomial averages.
//
// estimate_limit() is a window heuristic: the value is the mean of the last
// `window` sweep entries and the sweep counts as converged when every one of
// them lies within `tolerance` of that mean. Experiments built on it report
// "consistent with" / "inconsistent with" at that tolerance; they prove nothing.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "binavg/binomial.hpp"
#include "binavg/convolution.hpp"
#include "binavg/numeric.hpp"
#include "binavg/sequence.hpp"
#include "binavg/weight_profile.hpp"
#include "binavg/weighted.hpp"

namespace binavg {

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr std::size_t kDefaultWindow = 10;

template <RealField Real>
struct LimitEstimate {
  Complex<Real> value;
  bool converged = false;
  std::size_t N_used = 0;  // index of the last sweep entry
  std::size_t window = 0;
  double max_window_deviation = 0;
  double tolerance = 0;
};

template <RealField Real>
LimitEstimate<Real> estimate_limit(std::span<const Complex<Real>> sweep, double tolerance, std::size_t window) {
  if (window == 0) throw DomainError("window must be positive");
  if (window > sweep.size())
    throw DomainError("window " + std::to_string(window) + " exceeds sweep length " + std::to_string(sweep.size()));
  auto tail = sweep.subspan(sweep.size() - window);
  Complex<Real> mean;
  for (const auto& v : tail) mean += v;
  mean /= Complex<Real>(Real(static_cast<long>(window)));

  LimitEstimate<Real> est;
  est.window = window;
  est.tolerance = tolerance;
  est.N_used = sweep.size() - 1;
  for (const auto& v : tail) est.max_window_deviation = std::max(est.max_window_deviation, magnitude(v - mean));
  est.converged = est.max_window_deviation <= tolerance;
  est.value = std::move(mean);
  return est;
}

template <RealField Real>
struct ExperimentParams {
  Real r;
  std::size_t N_max = 100;
  double tolerance = kDefaultTolerance;
  std::size_t window = kDefaultWindow;
};

namespace detail {

template <RealField Real>
LimitEstimate<Real> sweep_limit(const Sequence<Real>& x, const Real& r, const ExperimentParams<Real>& p) {
  auto sweep = binomial_sweep(x, p.N_max, r);
  return estimate_limit<Real>(sweep, p.tolerance, p.window);
}

template <RealField Real>
LimitEstimate<Real> converged_input_limit(const Sequence<Real>& x, const Real& r, const ExperimentParams<Real>& p) {
  auto est = sweep_limit(x, r, p);
  if (!est.converged)
    throw NonConvergence("binomial averages of " + x.to_string() + " did not settle (max window deviation " +
                         format_real(est.max_window_deviation) + " > " + format_real(p.tolerance) + ")");
  return est;
}

}  // namespace detail

template <RealField Real>
struct MainTheoremReport {
  LimitEstimate<Real> input;      // L
  LimitEstimate<Real> convolved;  // limit of the convolved sequence's averages
  Complex<Real> correct_rhs;      // L * sum lambda
  Complex<Real> incorrect_rhs;    // L * (lambda_0 + sum lambda_n r^(n-1))
  double gap_correct = 0;
  double gap_incorrect = 0;
  bool consistent_with_correct = false;
  bool consistent_with_incorrect = false;
};

/// Estimates L from x, then the limit for Convolved(x, lambda), and compares
/// it with both candidate formulas evaluated at the estimated L.
template <RealField Real>
MainTheoremReport<Real> run_main_theorem_experiment(const Sequence<Real>& x, const WeightProfile<Real>& lambda,
                                                    const ExperimentParams<Real>& p) {
  require_unit_interval(p.r);
  MainTheoremReport<Real> rep;
  rep.input = detail::converged_input_limit(x, p.r, p);
  rep.convolved = detail::sweep_limit(Sequence<Real>::convolved(x, lambda), p.r, p);
  rep.correct_rhs = correct_rhs(lambda, rep.input.value);
  rep.incorrect_rhs = incorrect_rhs(lambda, p.r, rep.input.value);
  rep.gap_correct = magnitude(rep.convolved.value - rep.correct_rhs);
  rep.gap_incorrect = magnitude(rep.convolved.value - rep.incorrect_rhs);
  rep.consistent_with_correct = rep.convolved.converged && rep.gap_correct <= p.tolerance;
  rep.consistent_with_incorrect = rep.convolved.converged && rep.gap_incorrect <= p.tolerance;
  return rep;
}

template <RealField Real>
struct ShiftInvarianceReport {
  LimitEstimate<Real> base;
  std::vector<LimitEstimate<Real>> shifted;  // shifted[j-1] is for T^j x
  std::vector<double> gaps;                  // |shifted - base|
  bool consistent = false;
};

/// Limits of T^j x for j = 1..k against the limit of x.
template <RealField Real>
ShiftInvarianceReport<Real> run_shift_invariance_experiment(const Sequence<Real>& x, std::size_t k,
                                                            const ExperimentParams<Real>& p) {
  require_unit_interval(p.r);
  ShiftInvarianceReport<Real> rep;
  rep.base = detail::converged_input_limit(x, p.r, p);
  rep.consistent = true;
  for (std::size_t j = 1; j <= k; ++j) {
    auto est = detail::sweep_limit(Sequence<Real>::shift_right(x, j), p.r, p);
    double gap = magnitude(est.value - rep.base.value);
    rep.consistent = rep.consistent && est.converged && gap <= p.tolerance;
    rep.gaps.push_back(gap);
    rep.shifted.push_back(std::move(est));
  }
  return rep;
}

template <RealField Real>
struct RIndependenceReport {
  Real r, r_prime;
  LimitEstimate<Real> at_r;
  LimitEstimate<Real> at_r_prime;
  double gap = 0;
  bool consistent = false;
};

/// The limit at r' < r should match the limit at r.
template <RealField Real>
RIndependenceReport<Real> run_r_independence_experiment(const Sequence<Real>& x, const Real& r_prime,
                                                        const ExperimentParams<Real>& p) {
  require_unit_interval(p.r);
  require_unit_interval(r_prime);
  if (!(r_prime < p.r)) throw DomainError("r-independence is only claimed for r' < r");
  RIndependenceReport<Real> rep{p.r, r_prime, {}, {}, 0, false};
  rep.at_r = detail::converged_input_limit(x, p.r, p);
  rep.at_r_prime = detail::sweep_limit(x, r_prime, p);
  rep.gap = magnitude(rep.at_r.value - rep.at_r_prime.value);
  rep.consistent = rep.at_r_prime.converged && rep.gap <= p.tolerance;
  return rep;
}

template <RealField Real>
struct WeightedCompositionReport {
  LimitEstimate<Real> input;     // L
  LimitEstimate<Real> composed;  // limit of E^Bin(r) of n -> E^W_n(x)
  double gap = 0;
  bool consistent = false;
};

/// Binomial averages of y_n = E^W_n(x) (y_0 = 0) against the limit of x.
template <RealField Real>
WeightedCompositionReport<Real> run_weighted_composition_experiment(const WeightFunction<Real>& W,
                                                                    const Sequence<Real>& x,
                                                                    const ExperimentParams<Real>& p) {
  require_unit_interval(p.r);
  if (!x.is_bounded()) throw DomainError("weighted composition needs a bounded sequence");
  WeightedCompositionReport<Real> rep;
  rep.input = detail::converged_input_limit(x, p.r, p);
  auto y = weighted_average_sweep(W, x, p.N_max);
  auto sweep = binomial_sweep_values<Real>(y, p.N_max, p.r);
  rep.composed = estimate_limit<Real>(sweep, p.tolerance, p.window);
  rep.gap = magnitude(rep.composed.value - rep.input.value);
  rep.consistent = rep.composed.converged && rep.gap <= p.tolerance;
  return rep;
}

}  // namespace binavg
