#pragma once

// Symbolic complex sequences, evaluated lazily.
//
// A Sequence is an immutable expression tree; copies share nodes. Nothing is
// materialized until eval() or prefix() is called, and prefix(N) allocates
// O(N) per node (O(N^2) time for convolutions).

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "binavg/numeric.hpp"
#include "binavg/weight_profile.hpp"

namespace binavg {

template <RealField Real>
class Sequence {
 public:
  using Scalar = Complex<Real>;
  using Profile = WeightProfile<Real>;

  struct Constant {
    Scalar c;
  };
  struct Geometric {
    Scalar z;
  };
  struct Periodic {
    std::vector<Scalar> values;
  };
  struct FromFile {
    std::string path;
    std::vector<Scalar> values;
  };
  // Composite nodes hold a Sequence, so they are completed after the class.
  struct ShiftRight;
  struct ShiftLeft;
  struct Scale;
  struct Sum;
  struct Convolved;
  using Node = std::variant<Constant, Geometric, Periodic, FromFile, ShiftRight, ShiftLeft, Scale, Sum, Convolved>;

  static Sequence constant(Scalar c) { return Sequence(Constant{std::move(c)}); }
  static Sequence geometric(Scalar z) { return Sequence(Geometric{std::move(z)}); }
  static Sequence periodic(std::vector<Scalar> values) {
    if (values.empty()) throw DomainError("periodic sequence needs at least one value");
    return Sequence(Periodic{std::move(values)});
  }
  static Sequence from_values(std::string path, std::vector<Scalar> values) {
    return Sequence(FromFile{std::move(path), std::move(values)});
  }
  /// One complex value per line; line i holds x_i. Trailing blank lines are ignored.
  static Sequence from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sequence file '" + path + "'");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    std::vector<Scalar> values;
    values.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      try {
        values.push_back(parse_complex<Real>(lines[i]));
      } catch (const ParseError& e) {
        throw ParseError(path + ":" + std::to_string(i + 1) + ": " + e.what());
      }
    }
    return from_values(path, std::move(values));
  }
  static Sequence shift_right(Sequence s, std::size_t k) { return Sequence(ShiftRight{std::move(s), k}); }
  static Sequence shift_left(Sequence s, std::size_t k) { return Sequence(ShiftLeft{std::move(s), k}); }
  static Sequence scale(Sequence s, Scalar c) { return Sequence(Scale{std::move(s), std::move(c)}); }
  static Sequence sum(Sequence a, Sequence b) { return Sequence(Sum{std::move(a), std::move(b)}); }
  static Sequence convolved(Sequence s, Profile weights) { return Sequence(Convolved{std::move(s), std::move(weights)}); }

  const Node& node() const { return *node_; }

  Scalar eval(std::size_t n) const {
    return std::visit(
        [n](const auto& v) -> Scalar {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return v.c;
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return pow(v.z, n);
          } else if constexpr (std::is_same_v<T, Periodic>) {
            return v.values[n % v.values.size()];
          } else if constexpr (std::is_same_v<T, FromFile>) {
            if (n >= v.values.size())
              throw IndexError("index " + std::to_string(n) + " past end of '" + v.path + "' (" +
                               std::to_string(v.values.size()) + " values)");
            return v.values[n];
          } else if constexpr (std::is_same_v<T, ShiftRight>) {
            return n < v.k ? Scalar{} : v.inner.eval(n - v.k);
          } else if constexpr (std::is_same_v<T, ShiftLeft>) {
            return v.inner.eval(n + v.k);
          } else if constexpr (std::is_same_v<T, Scale>) {
            return v.c * v.inner.eval(n);
          } else if constexpr (std::is_same_v<T, Sum>) {
            return v.lhs.eval(n) + v.rhs.eval(n);
          } else {
            auto xs = v.inner.prefix(n);
            auto ls = v.weights.prefix(n);
            Scalar acc;
            for (std::size_t k = 0; k <= n; ++k) acc += ls[k] * xs[n - k];
            return acc;
          }
        },
        *node_);
  }

  /// [x_0, ..., x_N].
  std::vector<Scalar> prefix(std::size_t N) const {
    return std::visit(
        [N](const auto& v) -> std::vector<Scalar> {
          using T = std::decay_t<decltype(v)>;
          std::vector<Scalar> out;
          out.reserve(N + 1);
          if constexpr (std::is_same_v<T, Constant>) {
            out.assign(N + 1, v.c);
          } else if constexpr (std::is_same_v<T, Geometric>) {
            Scalar term(Real(1));
            for (std::size_t n = 0; n <= N; ++n) {
              out.push_back(term);
              term *= v.z;
            }
          } else if constexpr (std::is_same_v<T, Periodic>) {
            for (std::size_t n = 0; n <= N; ++n) out.push_back(v.values[n % v.values.size()]);
          } else if constexpr (std::is_same_v<T, FromFile>) {
            if (N >= v.values.size())
              throw IndexError("prefix up to " + std::to_string(N) + " exceeds '" + v.path + "' (" +
                               std::to_string(v.values.size()) + " values)");
            out.assign(v.values.begin(), v.values.begin() + static_cast<std::ptrdiff_t>(N + 1));
          } else if constexpr (std::is_same_v<T, ShiftRight>) {
            out.assign(std::min(v.k, N + 1), Scalar{});
            if (N >= v.k) {
              auto inner = v.inner.prefix(N - v.k);
              out.insert(out.end(), std::make_move_iterator(inner.begin()), std::make_move_iterator(inner.end()));
            }
          } else if constexpr (std::is_same_v<T, ShiftLeft>) {
            auto inner = v.inner.prefix(N + v.k);
            out.assign(std::make_move_iterator(inner.begin() + static_cast<std::ptrdiff_t>(v.k)),
                       std::make_move_iterator(inner.end()));
          } else if constexpr (std::is_same_v<T, Scale>) {
            out = v.inner.prefix(N);
            for (auto& x : out) x = v.c * x;
          } else if constexpr (std::is_same_v<T, Sum>) {
            out = v.lhs.prefix(N);
            auto rhs = v.rhs.prefix(N);
            for (std::size_t n = 0; n <= N; ++n) out[n] += rhs[n];
          } else {
            auto xs = v.inner.prefix(N);
            auto ls = v.weights.prefix(N);
            for (std::size_t n = 0; n <= N; ++n) {
              Scalar acc;
              for (std::size_t k = 0; k <= n; ++k) acc += ls[k] * xs[n - k];
              out.push_back(std::move(acc));
            }
          }
          return out;
        },
        *node_);
  }

  /// Structural boundedness: false only when some Geometric leaf has |z| > 1.
  bool is_bounded() const {
    return std::visit(
        [](const auto& v) -> bool {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Geometric>) {
            return norm(v.z) <= 1;
          } else if constexpr (std::is_same_v<T, ShiftRight> || std::is_same_v<T, ShiftLeft> ||
                               std::is_same_v<T, Scale> || std::is_same_v<T, Convolved>) {
            return v.inner.is_bounded();
          } else if constexpr (std::is_same_v<T, Sum>) {
            return v.lhs.is_bounded() && v.rhs.is_bounded();
          } else {
            return true;
          }
        },
        *node_);
  }

  /// Canonical mini-language form; parse_sequence(to_string()) reproduces *this.
  std::string to_string() const {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return "const:" + format_complex(v.c);
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return "geom:" + format_complex(v.z);
          } else if constexpr (std::is_same_v<T, Periodic>) {
            std::string s = "periodic:";
            for (std::size_t i = 0; i < v.values.size(); ++i) {
              if (i) s += ',';
              s += format_complex(v.values[i]);
            }
            return s;
          } else if constexpr (std::is_same_v<T, FromFile>) {
            return "file:" + v.path;
          } else if constexpr (std::is_same_v<T, ShiftRight>) {
            return "shiftR:" + std::to_string(v.k) + "(" + v.inner.to_string() + ")";
          } else if constexpr (std::is_same_v<T, ShiftLeft>) {
            return "shiftL:" + std::to_string(v.k) + "(" + v.inner.to_string() + ")";
          } else if constexpr (std::is_same_v<T, Scale>) {
            return "scale:" + format_complex(v.c) + "(" + v.inner.to_string() + ")";
          } else if constexpr (std::is_same_v<T, Sum>) {
            return "sum(" + v.lhs.to_string() + ";" + v.rhs.to_string() + ")";
          } else {
            return "conv(" + v.inner.to_string() + ";" + v.weights.to_string() + ")";
          }
        },
        *node_);
  }

 private:
  explicit Sequence(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

/// (T^k x)_n = 0 for n < k, x_{n-k} otherwise.
template <RealField Real>
struct Sequence<Real>::ShiftRight {
  Sequence inner;
  std::size_t k;
};

/// n -> x_{n+k}
template <RealField Real>
struct Sequence<Real>::ShiftLeft {
  Sequence inner;
  std::size_t k;
};

template <RealField Real>
struct Sequence<Real>::Scale {
  Sequence inner;
  Scalar c;
};

template <RealField Real>
struct Sequence<Real>::Sum {
  Sequence lhs;
  Sequence rhs;
};

/// n -> sum_{k<=n} lambda_k x_{n-k}
template <RealField Real>
struct Sequence<Real>::Convolved {
  Sequence inner;
  Profile weights;
};

namespace detail {

/// Splits "a;b" at the single top-level ';' (parentheses may nest).
inline std::pair<std::string_view, std::string_view> split_pair(std::string_view s) {
  int depth = 0;
  std::size_t at = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ';' && depth == 0) {
      if (at != std::string_view::npos) throw ParseError("expected exactly one ';' in '" + std::string(s) + "'");
      at = i;
    }
  }
  if (at == std::string_view::npos) throw ParseError("expected '<a>;<b>' in '" + std::string(s) + "'");
  return {s.substr(0, at), s.substr(at + 1)};
}

/// For "head(body)" returns {head, body}; the final ')' must close the first '('.
inline std::pair<std::string_view, std::string_view> split_call(std::string_view s) {
  auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') throw ParseError("expected '(...)' in '" + std::string(s) + "'");
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')' && --depth == 0 && i != s.size() - 1)
      throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
  return {s.substr(0, open), s.substr(open + 1, s.size() - open - 2)};
}

inline std::size_t parse_count(std::string_view s) {
  s = trim(s);
  if (!all_digits(s)) throw ParseError("expected a nonnegative integer, got '" + std::string(s) + "'");
  return std::stoul(std::string(s));
}

}  // namespace detail

/// Parses the sequence mini-language:
///   const:c  geom:z  periodic:a,b,...  file:path
///   shiftR:k(S)  shiftL:k(S)  scale:c(S)  sum(S;S)  conv(S;profile)
template <RealField Real>
Sequence<Real> parse_sequence(std::string_view text) {
  using Seq = Sequence<Real>;
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty sequence spec");

  auto starts = [&](std::string_view p) { return s.substr(0, p.size()) == p; };

  if (starts("sum(") || starts("conv(")) {
    auto [head, body] = detail::split_call(s);
    auto [a, b] = detail::split_pair(body);
    if (head == "sum") return Seq::sum(parse_sequence<Real>(a), parse_sequence<Real>(b));
    return Seq::convolved(parse_sequence<Real>(a), parse_profile<Real>(b));
  }
  if (starts("shiftR:") || starts("shiftL:") || starts("scale:")) {
    auto [head, body] = detail::split_call(s);
    std::string_view arg = head.substr(head.find(':') + 1);
    Seq inner = parse_sequence<Real>(body);
    if (starts("shiftR:")) return Seq::shift_right(std::move(inner), detail::parse_count(arg));
    if (starts("shiftL:")) return Seq::shift_left(std::move(inner), detail::parse_count(arg));
    return Seq::scale(std::move(inner), parse_complex<Real>(arg));
  }
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown sequence spec '" + std::string(s) + "'");
  std::string_view kind = s.substr(0, colon);
  std::string_view body = s.substr(colon + 1);
  if (kind == "const") return Seq::constant(parse_complex<Real>(body));
  if (kind == "geom") return Seq::geometric(parse_complex<Real>(body));
  if (kind == "periodic") {
    std::vector<Complex<Real>> values;
    for (auto item : detail::split(body, ',')) values.push_back(parse_complex<Real>(item));
    return Seq::periodic(std::move(values));
  }
  if (kind == "file") return Seq::from_file(std::string(detail::trim(body)));
  throw ParseError("unknown sequence kind '" + std::string(kind) + "'");
}

}  // namespace binavg
