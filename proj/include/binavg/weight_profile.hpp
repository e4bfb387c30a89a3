#pragma once

// Closed-form lambda sequences for convolution summation methods.
//
// Every variant knows lambda_k for every k, so a convolution is never
// truncated and the absolute / total sums are available in closed form.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "binavg/numeric.hpp"

namespace binavg {

template <RealField Real>
class WeightProfile {
 public:
  using Scalar = Complex<Real>;

  struct FiniteSupport {
    std::vector<Scalar> values;
  };
  /// lambda_k = c * ratio^k, |ratio| < 1.
  struct GeometricTail {
    Scalar c;
    Real ratio;
  };
  /// lambda_k = L^k - L^(k+1), 0 < L < 1.
  struct RatioTelescoping {
    Real L;
  };
  using Variant = std::variant<FiniteSupport, GeometricTail, RatioTelescoping>;

  static WeightProfile finite(std::vector<Scalar> values) {
    if (values.empty()) throw DomainError("finite profile needs at least one weight");
    return WeightProfile(FiniteSupport{std::move(values)});
  }

  static WeightProfile geometric_tail(Scalar c, Real ratio) {
    if (!(ratio < 1 && ratio > -1)) throw DomainError("geomtail ratio must satisfy |ratio| < 1");
    return WeightProfile(GeometricTail{std::move(c), std::move(ratio)});
  }

  static WeightProfile ratio_telescoping(Real L) {
    if (!(L > 0 && L < 1)) throw DomainError("ratiotel requires L in (0,1)");
    return WeightProfile(RatioTelescoping{std::move(L)});
  }

  const Variant& variant() const { return v_; }

  Scalar at(std::size_t k) const {
    return std::visit(
        [k](const auto& p) -> Scalar {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FiniteSupport>) {
            return k < p.values.size() ? p.values[k] : Scalar{};
          } else if constexpr (std::is_same_v<T, GeometricTail>) {
            return p.c * Scalar(pow(p.ratio, k));
          } else {
            Real lk = pow(p.L, k);
            return Scalar(Real(lk - lk * p.L));
          }
        },
        v_);
  }

  /// [lambda_0, ..., lambda_n], built incrementally.
  std::vector<Scalar> prefix(std::size_t n) const {
    std::vector<Scalar> out;
    out.reserve(n + 1);
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FiniteSupport>) {
            for (std::size_t k = 0; k <= n; ++k) out.push_back(k < p.values.size() ? p.values[k] : Scalar{});
          } else if constexpr (std::is_same_v<T, GeometricTail>) {
            Scalar term = p.c;
            for (std::size_t k = 0; k <= n; ++k) {
              out.push_back(term);
              term *= Scalar(p.ratio);
            }
          } else {
            Real lk = 1;
            for (std::size_t k = 0; k <= n; ++k) {
              Real next = lk * p.L;
              out.push_back(Scalar(Real(lk - next)));
              lk = std::move(next);
            }
          }
        },
        v_);
    return out;
  }

  /// Sum of |lambda_k|. Exact mode requires real-valued weights.
  Real abs_sum() const {
    auto abs_of = [](const Scalar& z) -> Real {
      if constexpr (is_exact_v<Real>) {
        if (!z.is_real()) throw DomainError("exact abs_sum needs real-valued weights");
        return abs(z.re);
      } else {
        return std::hypot(z.re, z.im);
      }
    };
    return std::visit(
        [&](const auto& p) -> Real {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FiniteSupport>) {
            Real s = 0;
            for (const auto& v : p.values) s += abs_of(v);
            return s;
          } else if constexpr (std::is_same_v<T, GeometricTail>) {
            Real ar = p.ratio < 0 ? Real(-p.ratio) : p.ratio;
            return Real(abs_of(p.c) / (1 - ar));
          } else {
            return Real(1);  // all terms positive, telescoping to 1
          }
        },
        v_);
  }

  Scalar total_sum() const {
    return std::visit(
        [](const auto& p) -> Scalar {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FiniteSupport>) {
            Scalar s;
            for (const auto& v : p.values) s += v;
            return s;
          } else if constexpr (std::is_same_v<T, GeometricTail>) {
            return p.c / Scalar(Real(1 - p.ratio));
          } else {
            return Scalar(Real(1));
          }
        },
        v_);
  }

  /// Canonical mini-language form; parse_profile(to_string()) reproduces *this.
  std::string to_string() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FiniteSupport>) {
            std::string s = "finite:";
            for (std::size_t i = 0; i < p.values.size(); ++i) {
              if (i) s += ',';
              s += format_complex(p.values[i]);
            }
            return s;
          } else if constexpr (std::is_same_v<T, GeometricTail>) {
            return "geomtail:c=" + format_complex(p.c) + ",ratio=" + format_real(p.ratio);
          } else {
            return "ratiotel:L=" + format_real(p.L);
          }
        },
        v_);
  }

 private:
  explicit WeightProfile(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::string_view strip_key(std::string_view field, std::string_view key) {
  field = trim(field);
  if (field.substr(0, key.size()) != key || field.size() <= key.size() || field[key.size()] != '=')
    throw ParseError("expected '" + std::string(key) + "=' in '" + std::string(field) + "'");
  return field.substr(key.size() + 1);
}

}  // namespace detail

/// Parses `finite:a,b,...`, `geomtail:c=..,ratio=..` or `ratiotel:L=..`.
template <RealField Real>
WeightProfile<Real> parse_profile(std::string_view text) {
  using Profile = WeightProfile<Real>;
  std::string_view s = detail::trim(text);
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError("profile needs a 'kind:' prefix: '" + std::string(s) + "'");
  std::string_view kind = s.substr(0, colon);
  std::string_view body = s.substr(colon + 1);
  if (kind == "finite") {
    std::vector<Complex<Real>> values;
    for (auto item : detail::split(body, ',')) values.push_back(parse_complex<Real>(item));
    return Profile::finite(std::move(values));
  }
  if (kind == "geomtail") {
    auto fields = detail::split(body, ',');
    if (fields.size() != 2) throw ParseError("geomtail expects c=..,ratio=..");
    return Profile::geometric_tail(parse_complex<Real>(detail::strip_key(fields[0], "c")),
                                   parse_real<Real>(detail::strip_key(fields[1], "ratio")));
  }
  if (kind == "ratiotel") {
    return Profile::ratio_telescoping(parse_real<Real>(detail::strip_key(body, "L")));
  }
  throw ParseError("unknown profile kind '" + std::string(kind) + "'");
}

}  // namespace binavg
