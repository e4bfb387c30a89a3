#pragma once

// W-weighted averages
//
//   E^W_N(x) = (1 / W(N)) * sum_{n=1}^{N} (W(n) - W(n-1)) x_n,
//
// and their relation to the convolution method with lambda_n = L^n - L^(n+1),
// L = lim W(N-1)/W(N). The sum starts at n = 1, so x_0 never contributes.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "binavg/convolution.hpp"
#include "binavg/numeric.hpp"
#include "binavg/sequence.hpp"
#include "binavg/weight_profile.hpp"

namespace binavg {

template <RealField Real>
class WeightFunction {
 public:
  /// W(N) = a^N, a > 1.
  struct Power {
    Real a;
  };
  /// W(N) = N (Cesaro).
  struct Linear {};
  /// W(N) = N^p, p >= 1.
  struct Polynomial {
    unsigned p;
  };
  /// W(N) = values[N], strictly increasing, user supplied.
  struct Table {
    std::string source;
    std::vector<Real> values;
  };
  using Variant = std::variant<Power, Linear, Polynomial, Table>;

  static WeightFunction power(Real a) {
    if (!(a > 1)) throw DomainError("pow:a needs a > 1");
    return WeightFunction(Power{std::move(a)});
  }
  static WeightFunction linear() { return WeightFunction(Linear{}); }
  static WeightFunction polynomial(unsigned p) {
    if (p < 1) throw DomainError("poly:p needs p >= 1");
    return WeightFunction(Polynomial{p});
  }
  static WeightFunction table(std::string source, std::vector<Real> values) {
    if (values.size() < 2) throw DomainError("table W needs at least W(0) and W(1)");
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1])) throw DomainError("table W must be strictly increasing");
    return WeightFunction(Table{std::move(source), std::move(values)});
  }
  /// One real value per line, line i holding W(i).
  static WeightFunction table_from_file(const std::string& path) {
    auto seq = Sequence<Real>::from_file(path);
    const auto& file = std::get<typename Sequence<Real>::FromFile>(seq.node());
    std::vector<Real> values;
    for (const auto& z : file.values) {
      if (!z.is_real()) throw ParseError("table W values must be real");
      values.push_back(z.re);
    }
    return table(path, std::move(values));
  }

  const Variant& variant() const { return v_; }

  /// W(n).
  Real value(std::size_t n) const {
    return std::visit(
        [n](const auto& w) -> Real {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, Power>) {
            return pow(w.a, n);
          } else if constexpr (std::is_same_v<T, Linear>) {
            return Real(static_cast<long>(n));
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            return pow(Real(static_cast<long>(n)), w.p);
          } else {
            if (n >= w.values.size())
              throw IndexError("W(" + std::to_string(n) + ") past end of table '" + w.source + "'");
            return w.values[n];
          }
        },
        v_);
  }

  /// Delta W(n) = W(n) - W(n-1), n >= 1.
  Real delta(std::size_t n) const { return Real(value(n) - value(n - 1)); }

  /// Delta W(n) / W(N). Power uses a^(n-N) (1 - 1/a) so Float mode never overflows.
  Real delta_ratio(std::size_t n, std::size_t N) const {
    if (const auto* p = std::get_if<Power>(&v_)) {
      Real inv = 1 / p->a;
      return Real(pow(inv, N - n) * (1 - inv));
    }
    Real wN = value(N);
    if (wN == 0) throw DomainError("W(" + std::to_string(N) + ") = 0");
    return Real(delta(n) / wN);
  }

  /// W(n-1) / W(n), n >= 1.
  Real step_ratio(std::size_t n) const {
    if (const auto* p = std::get_if<Power>(&v_)) return Real(1 / p->a);
    Real wn = value(n);
    if (wn == 0) throw DomainError("W(" + std::to_string(n) + ") = 0");
    return Real(value(n - 1) / wn);
  }

  std::string to_string() const {
    return std::visit(
        [](const auto& w) -> std::string {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, Power>) {
            if constexpr (!is_exact_v<Real>) {
              if (w.a == std::exp(1.0)) return "pow:e";
            }
            return "pow:" + format_real(w.a);
          } else if constexpr (std::is_same_v<T, Linear>) {
            return "linear";
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            return "poly:" + std::to_string(w.p);
          } else {
            return "table:" + w.source;
          }
        },
        v_);
  }

 private:
  explicit WeightFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Parses `pow:a`, `pow:e` (float only), `linear`, `poly:p`, `table:path`.
template <RealField Real>
WeightFunction<Real> parse_weight_function(std::string_view text) {
  using W = WeightFunction<Real>;
  std::string_view s = detail::trim(text);
  if (s == "linear") return W::linear();
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown weight function '" + std::string(s) + "'");
  std::string_view kind = s.substr(0, colon);
  std::string_view body = s.substr(colon + 1);
  if (kind == "pow") return W::power(parse_real<Real>(body));
  if (kind == "poly") {
    auto p = detail::parse_count(body);
    return W::polynomial(static_cast<unsigned>(p));
  }
  if (kind == "table") return W::table_from_file(std::string(detail::trim(body)));
  throw ParseError("unknown weight function kind '" + std::string(kind) + "'");
}

template <RealField Real>
Complex<Real> weighted_average(const WeightFunction<Real>& W, const Sequence<Real>& x, std::size_t N) {
  if (N < 1) throw DomainError("weighted average needs N >= 1");
  auto values = x.prefix(N);
  Complex<Real> acc;
  for (std::size_t n = 1; n <= N; ++n) acc += Complex<Real>(W.delta_ratio(n, N)) * values[n];
  return acc;
}

/// [y_0, ..., y_{N_max}] with y_N = E^W_N(x) for N >= 1 and y_0 = 0 (empty sum).
///
/// Uses y_N = (W(N-1)/W(N)) y_{N-1} + (Delta W(N)/W(N)) x_N, which is the
/// defining sum rearranged, so it is exact in Exact mode.
template <RealField Real>
std::vector<Complex<Real>> weighted_average_sweep(const WeightFunction<Real>& W, const Sequence<Real>& x,
                                                  std::size_t N_max) {
  auto values = x.prefix(N_max);
  std::vector<Complex<Real>> out;
  out.reserve(N_max + 1);
  out.emplace_back();
  for (std::size_t N = 1; N <= N_max; ++N) {
    Complex<Real> y = Complex<Real>(W.step_ratio(N)) * out.back() + Complex<Real>(W.delta_ratio(N, N)) * values[N];
    out.push_back(std::move(y));
  }
  return out;
}

/// L = lim W(N-1)/W(N) for the variants where it has a closed form.
template <RealField Real>
Real ratio_limit(const WeightFunction<Real>& W) {
  using WF = WeightFunction<Real>;
  return std::visit(
      [](const auto& w) -> Real {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, typename WF::Power>) {
          return Real(1 / w.a);
        } else if constexpr (std::is_same_v<T, typename WF::Table>) {
          throw DomainError("table W has no closed-form ratio limit");
        } else {
          return Real(1);
        }
      },
      W.variant());
}

/// lambda_n = L^n - L^(n+1); requires 0 < L < 1.
template <RealField Real>
WeightProfile<Real> lambda_profile_of(const WeightFunction<Real>& W) {
  Real L = ratio_limit(W);
  if (!(L > 0 && L < 1))
    throw DomainError("ratio limit L = " + format_real(L) + " of " + W.to_string() + " is not in (0,1)");
  return WeightProfile<Real>::ratio_telescoping(std::move(L));
}

/// E^W_N(x) - sum_{k=0}^{N} lambda_k x_{N-k}. Tends to 0 for bounded x.
template <RealField Real>
Complex<Real> equivalence_residual(const WeightFunction<Real>& W, const Sequence<Real>& x, std::size_t N) {
  if (!x.is_bounded()) throw DomainError("equivalence residual needs a bounded sequence");
  auto lambda = lambda_profile_of(W);
  return weighted_average(W, x, N) - convolve_at(x, lambda, N);
}

template <RealField Real>
struct RatioPowerReport {
  std::size_t k = 0;
  Real limit_power;              // L^k
  std::size_t first_N = 0;       // ratios[i] is W(first_N + i - k) / W(first_N + i)
  std::vector<Real> ratios;
  std::vector<double> deviations;  // |ratio - L^k|
  bool non_increasing = true;
};

/// Tracks W(N-k)/W(N) against L^k for max(k,1) <= N <= N_max.
template <RealField Real>
RatioPowerReport<Real> ratio_power_check(const WeightFunction<Real>& W, std::size_t k, std::size_t N_max) {
  RatioPowerReport<Real> report;
  report.k = k;
  report.limit_power = pow(ratio_limit(W), k);
  report.first_N = k == 0 ? 1 : k;
  for (std::size_t N = report.first_N; N <= N_max; ++N) {
    Real ratio;
    if (k == 0) {
      ratio = 1;
    } else if (const auto* p = std::get_if<typename WeightFunction<Real>::Power>(&W.variant())) {
      ratio = pow(Real(1 / p->a), k);
    } else {
      ratio = W.value(N - k) / W.value(N);
    }
    double dev = std::abs(to_double(Real(ratio - report.limit_power)));
    if (!report.deviations.empty() && dev > report.deviations.back()) report.non_increasing = false;
    report.deviations.push_back(dev);
    report.ratios.push_back(std::move(ratio));
  }
  return report;
}

}  // namespace binavg
