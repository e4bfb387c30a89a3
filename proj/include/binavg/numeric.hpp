#pragma once

// Exact and floating-point scalars shared by every binavg module.
//
// Two arithmetic modes exist: Exact (arbitrary-precision rationals) and
// Float (IEEE doubles). A mode is selected by the real type a template is
// instantiated with, so one computation can never mix the two.

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "binavg/errors.hpp"

namespace binavg {

using Integer = mpz_class;
using Rational = mpq_class;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
concept RealField = std::same_as<T, Rational> || std::same_as<T, double>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

// ---------------------------------------------------------------------------
// Complex numbers over either real type. std::complex is only specified for
// floating-point types, hence the small hand-rolled struct.
// ---------------------------------------------------------------------------

template <RealField Real>
struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by design of real embedding
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    if (d == 0) throw DomainError("division by zero");
    Real r = (re * o.re + im * o.im) / d;
    Real i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(Real(-a.re), Real(-a.im)); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using ExactScalar = Complex<Rational>;
using FloatScalar = Complex<double>;

/// |z|^2, exact in Exact mode.
template <RealField Real>
Real norm(const Complex<Real>& z) {
  return Real(z.re * z.re + z.im * z.im);
}

/// |z| as a double. Exact-mode values are rounded once at the end.
template <RealField Real>
double magnitude(const Complex<Real>& z) {
  return std::hypot(to_double(z.re), to_double(z.im));
}

template <RealField Real>
Complex<Real> pow(const Complex<Real>& z, unsigned long k) {
  Complex<Real> result(Real(1));
  Complex<Real> base = z;
  while (k != 0) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k != 0) base *= base;
  }
  return result;
}

template <RealField Real>
Real pow(const Real& x, unsigned long k) {
  if constexpr (is_exact_v<Real>) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), k);
    return out;  // already canonical: gcd(p^k, q^k) = 1
  } else {
    return std::pow(x, static_cast<double>(k));
  }
}

// ---------------------------------------------------------------------------
// Binomial coefficients
// ---------------------------------------------------------------------------

/// C(n, k), zero when k > n.
inline Integer binomial_coefficient(unsigned long n, unsigned long k) {
  Integer out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// Falling-factorial binomial a(a-1)...(a-j+1)/j! for any integer a.
///
/// Built as the running product c_i = c_{i-1} * (a-i+1) / i, which stays
/// integral at every step (c_i is itself a generalized binomial).
inline Integer generalized_binomial(const Integer& a, unsigned long j) {
  Integer c = 1;
  for (unsigned long i = 1; i <= j; ++i) {
    c *= a - (i - 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Text formats. Rationals: "p/q" or "p" (decimals such as "0.25" are also
// accepted and converted exactly). Complex: "a+bi", "bi", "a".
// Everything here is locale independent.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace detail

inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = detail::parse_integer(s.substr(0, slash));
    std::string_view den = s.substr(slash + 1);
    if (!detail::all_digits(den)) throw ParseError("bad denominator in '" + std::string(s) + "'");
    Integer q(std::string(den), 10);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational out(p, q);
    out.canonicalize();
    return out;
  }
  // Plain integer or finite decimal "[-]d+.d*".
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view int_part = body, frac_part;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    int_part = body.substr(0, dot);
    frac_part = body.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !detail::all_digits(int_part)) ||
      (!frac_part.empty() && !detail::all_digits(frac_part)))
    throw ParseError("not a rational number: '" + std::string(s) + "'");
  Integer digits(std::string(int_part) + std::string(frac_part), 10);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
  Rational out(digits, scale);
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

inline double parse_double(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s == "e") return std::exp(1.0);
  if (s == "-e") return -std::exp(1.0);
  if (s.find('/') != std::string_view::npos) return parse_rational(s).get_d();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not a number: '" + std::string(s) + "'");
  return v;
}

template <RealField Real>
Real parse_real(std::string_view s) {
  if constexpr (is_exact_v<Real>) {
    if (detail::trim(s) == "e" || detail::trim(s) == "-e")
      throw ModeError("'e' is irrational and only available in float mode");
    return parse_rational(s);
  } else {
    return parse_double(s);
  }
}

template <RealField Real>
Complex<Real> parse_complex(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty complex number");
  if (s.back() != 'i') return Complex<Real>(parse_real<Real>(s));
  s.remove_suffix(1);
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_of = [](std::string_view t) -> Real {
    if (t.empty() || t == "+") return Real(1);
    if (t == "-") return Real(-1);
    return parse_real<Real>(t);
  };
  if (split == std::string_view::npos) return Complex<Real>(Real(0), imag_of(s));
  return Complex<Real>(parse_real<Real>(s.substr(0, split)), imag_of(s.substr(split)));
}

inline std::string format_real(const Rational& q) { return q.get_str(10); }

/// Shortest-round-trip is not required; 17 significant digits always is.
inline std::string format_real(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

template <RealField Real>
std::string format_complex(const Complex<Real>& z) {
  if (z.im == 0) return format_real(z.re);
  std::string im = format_real(z.im);
  std::string out = z.re == 0 ? std::string() : format_real(z.re);
  if (!out.empty() && im.front() != '-') out += '+';
  return out + im + 'i';
}

template <RealField Real>
std::ostream& operator<<(std::ostream& os, const Complex<Real>& z) {
  return os << format_complex(z);
}

}  // namespace binavg
