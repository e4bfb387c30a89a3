#pragma once

// r-binomial (Euler) averages
//
//   E_N(x) = sum_{n=0}^{N} C(N,n) r^n (1-r)^(N-n) x_n,   0 < r < 1,
//
// together with finite checks of the algebra behind their shift invariance.
// Weight rows are produced by the Pascal-style update
//
//   w'_n = r w_{n-1} + (1-r) w_n,
//
// which only ever adds positive numbers, so Float mode neither overflows nor
// cancels even for N in the tens of thousands.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "binavg/numeric.hpp"
#include "binavg/sequence.hpp"

namespace binavg {

template <RealField Real>
void require_unit_interval(const Real& r) {
  if (!(r > 0 && r < 1)) throw DomainError("r must lie in the open interval (0,1), got " + format_real(r));
}

template <RealField Real>
class BinomialRow {
 public:
  /// Row N = 0, i.e. [1].
  explicit BinomialRow(Real r) : r_(std::move(r)), s_(1 - r_), weights_{Real(1)} { require_unit_interval(r_); }

  std::size_t N() const { return weights_.size() - 1; }
  const Real& r() const { return r_; }
  std::span<const Real> weights() const { return weights_; }

  /// Row N -> row N+1.
  void advance() {
    const std::size_t n_old = weights_.size();
    weights_.push_back(Real(r_ * weights_[n_old - 1]));
    for (std::size_t n = n_old - 1; n > 0; --n) weights_[n] = r_ * weights_[n - 1] + s_ * weights_[n];
    weights_[0] *= s_;
  }

  /// Sum of the weights; compensated (Neumaier) in Float mode.
  Real total() const {
    if constexpr (is_exact_v<Real>) {
      Rational s = 0;
      for (const auto& w : weights_) s += w;
      return s;
    } else {
      double s = 0, c = 0;
      for (double w : weights_) {
        double t = s + w;
        c += std::abs(s) >= std::abs(w) ? (s - t) + w : (w - t) + s;
        s = t;
      }
      return s + c;
    }
  }

  /// sum_n weights[n] * values[n]; values must hold at least N+1 entries.
  Complex<Real> dot(std::span<const Complex<Real>> values) const {
    Complex<Real> acc;
    for (std::size_t n = 0; n < weights_.size(); ++n) {
      acc.re += weights_[n] * values[n].re;
      acc.im += weights_[n] * values[n].im;
    }
    return acc;
  }

 private:
  Real r_;
  Real s_;  // 1 - r
  std::vector<Real> weights_;
};

template <RealField Real>
BinomialRow<Real> weights_row(std::size_t N, const Real& r) {
  BinomialRow<Real> row(r);
  for (std::size_t i = 0; i < N; ++i) row.advance();
  return row;
}

/// [E_0, ..., E_{N_max}] of an already materialized prefix (size >= N_max+1).
template <RealField Real>
std::vector<Complex<Real>> binomial_sweep_values(std::span<const Complex<Real>> values, std::size_t N_max,
                                                 const Real& r) {
  BinomialRow<Real> row(r);
  std::vector<Complex<Real>> out;
  out.reserve(N_max + 1);
  for (std::size_t N = 0; N <= N_max; ++N) {
    if (N) row.advance();
    out.push_back(row.dot(values));
  }
  return out;
}

template <RealField Real>
std::vector<Complex<Real>> binomial_sweep(const Sequence<Real>& x, std::size_t N_max, const Real& r) {
  require_unit_interval(r);
  auto values = x.prefix(N_max);
  return binomial_sweep_values<Real>(values, N_max, r);
}

template <RealField Real>
Complex<Real> binomial_average(const Sequence<Real>& x, std::size_t N, const Real& r) {
  auto row = weights_row(N, r);
  auto values = x.prefix(N);
  return row.dot(values);
}

/// r E_N(x_{n+1}) + (1-r) E_N(x_n) - E_{N+1}(x_n). Zero in exact arithmetic.
template <RealField Real>
Complex<Real> check_one_step_recurrence(const Sequence<Real>& x, std::size_t N, const Real& r) {
  if (N < 1) throw DomainError("recurrence checks need N >= 1");
  require_unit_interval(r);
  auto values = x.prefix(N + 1);
  auto row = weights_row(N, r);
  Complex<Real> next = row.dot(std::span<const Complex<Real>>(values).subspan(1));
  Complex<Real> here = row.dot(values);
  row.advance();
  Complex<Real> lhs = Complex<Real>(r) * next + Complex<Real>(Real(1 - r)) * here;
  return lhs - row.dot(values);
}

/// E_{N+k}(x_n) - [ r sum_{i<k} (1-r)^(k-i-1) E_{N+i}(x_{n+1}) + (1-r)^k E_N(x_n) ].
template <RealField Real>
Complex<Real> check_k_step_expansion(const Sequence<Real>& x, std::size_t N, std::size_t k, const Real& r) {
  if (N < 1) throw DomainError("recurrence checks need N >= 1");
  if (k < 1) throw DomainError("k-step expansion needs k >= 1");
  require_unit_interval(r);
  using Scalar = Complex<Real>;
  auto values = x.prefix(N + k);
  std::span<const Scalar> all(values);
  BinomialRow<Real> row(r);
  for (std::size_t i = 0; i < N; ++i) row.advance();

  const Real s = 1 - r;
  Scalar acc;
  Scalar start = row.dot(all);
  for (std::size_t i = 0; i < k; ++i) {
    acc += Scalar(pow(s, k - i - 1)) * row.dot(all.subspan(1));
    row.advance();
  }
  Scalar rhs = Scalar(r) * acc + Scalar(pow(s, k)) * start;
  return row.dot(all) - rhs;
}

struct SupBoundReport {
  /// margin[N-1] = max_{M<N} |E_M(x)| - |E_N(Tx)| for N = 1..N_max.
  std::vector<double> margins;
  bool holds = true;
  std::size_t first_failure = 0;  // N of the first violation, 0 when none
};

/// Checks |E_N(Tx)| <= max_{0<=M<N} |E_M(x)| for 1 <= N <= N_max, T the right shift.
///
/// Exact mode compares squared magnitudes exactly. Float mode allows a
/// rounding slack of 8 eps (N+1) max_M |E_M(x)|.
template <RealField Real>
SupBoundReport check_sup_bound(const Sequence<Real>& x, std::size_t N_max, const Real& r) {
  if (N_max < 1) throw DomainError("sup bound check needs N_max >= 1");
  require_unit_interval(r);
  auto base = binomial_sweep(x, N_max - 1, r);
  auto shifted = binomial_sweep(Sequence<Real>::shift_right(x, 1), N_max, r);

  SupBoundReport report;
  report.margins.reserve(N_max);
  Real best_sq = norm(base[0]);
  for (std::size_t N = 1; N <= N_max; ++N) {
    if (N >= 2) {
      Real cand = norm(base[N - 1]);
      if (cand > best_sq) best_sq = cand;
    }
    Real here_sq = norm(shifted[N]);
    double margin = std::sqrt(to_double(best_sq)) - magnitude(shifted[N]);
    report.margins.push_back(margin);
    bool ok;
    if constexpr (is_exact_v<Real>) {
      ok = here_sq <= best_sq;
    } else {
      double slack = 8 * std::numeric_limits<double>::epsilon() * static_cast<double>(N + 1) * std::sqrt(best_sq);
      ok = margin >= -slack;
    }
    if (!ok && report.holds) {
      report.holds = false;
      report.first_failure = N;
    }
  }
  return report;
}

}  // namespace binavg
