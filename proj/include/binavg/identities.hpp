#pragma once

// Exhaustive exact checks of the alternating binomial sums
//
//   S(n,k,l) = sum_{j=k}^{n-l} (-1)^(j-k) C(n, j+l) C(j, k),   l < n, 0 <= k <= n-l,
//
// which equal C(n-(k+1), l-1) for every l but equal 1 only when l = 1, and
// of the Chu-Vandermonde identity for generalized binomials. Integer-only.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "binavg/numeric.hpp"

namespace binavg {

struct IdentityRow {
  unsigned long n = 0, k = 0, l = 0;
  Integer lhs, rhs;
  bool ok() const { return lhs == rhs; }
};

struct IdentityReport {
  std::string identity;
  std::string ranges;
  std::size_t checked = 0;
  std::vector<IdentityRow> violations;
  bool all_hold() const { return violations.empty(); }
};

inline void require_alternating_domain(unsigned long n, unsigned long k, unsigned long l) {
  if (l < 1 || l >= n || k > n - l)
    throw DomainError("need 1 <= l < n and 0 <= k <= n-l, got (n,k,l) = (" + std::to_string(n) + "," +
                      std::to_string(k) + "," + std::to_string(l) + ")");
}

/// S(n,k,l) by direct summation.
inline Integer alternating_sum(unsigned long n, unsigned long k, unsigned long l) {
  require_alternating_domain(n, k, l);
  Integer s = 0;
  for (unsigned long j = k; j <= n - l; ++j) {
    Integer term = binomial_coefficient(n, j + l) * binomial_coefficient(j, k);
    if ((j - k) % 2) s -= term;
    else s += term;
  }
  return s;
}

/// S(n,k,l) after the sign flip (-1)^m C(j,k) -> C(-k-1, m) and reindexing:
/// sum_{j=0}^{n-l-k} C(n, n-l-k-j) C(-k-1, j). Independent of alternating_sum.
inline Integer alternating_sum_via_negation(unsigned long n, unsigned long k, unsigned long l) {
  require_alternating_domain(n, k, l);
  const unsigned long top = n - l - k;
  const Integer a = static_cast<long>(n);
  const Integer b = -static_cast<long>(k + 1);
  Integer s = 0;
  for (unsigned long j = 0; j <= top; ++j) s += generalized_binomial(a, top - j) * generalized_binomial(b, j);
  return s;
}

/// C(n-(k+1), l-1), the closed form of S(n,k,l).
inline Integer alternating_sum_closed_form(unsigned long n, unsigned long k, unsigned long l) {
  require_alternating_domain(n, k, l);
  return binomial_coefficient(n - (k + 1), l - 1);
}

/// Every admissible (n,k,l) with n <= n_max in lexicographic order, both sides filled in.
inline std::vector<IdentityRow> star_star_rows(unsigned long n_max) {
  std::vector<IdentityRow> rows;
  for (unsigned long n = 2; n <= n_max; ++n)
    for (unsigned long k = 0; k + 1 <= n; ++k)
      for (unsigned long l = 1; l < n && k <= n - l; ++l)
        rows.push_back({n, k, l, alternating_sum(n, k, l), alternating_sum_closed_form(n, k, l)});
  return rows;
}

/// S(n,k,l) == C(n-(k+1), l-1) over all admissible triples with n <= n_max.
inline IdentityReport verify_star_star(unsigned long n_max) {
  if (n_max < 2) throw DomainError("n_max must be at least 2");
  IdentityReport report{"alternating_sum == C(n-(k+1), l-1)", "2 <= n <= " + std::to_string(n_max), 0, {}};
  for (auto& row : star_star_rows(n_max)) {
    ++report.checked;
    if (!row.ok()) report.violations.push_back(std::move(row));
  }
  return report;
}

/// S(n,k,1) == 1 for every 0 <= k <= n-1, n <= n_max.
inline IdentityReport verify_unit_slice(unsigned long n_max) {
  if (n_max < 2) throw DomainError("n_max must be at least 2");
  IdentityReport report{"alternating_sum(n,k,1) == 1", "2 <= n <= " + std::to_string(n_max), 0, {}};
  for (unsigned long n = 2; n <= n_max; ++n)
    for (unsigned long k = 0; k + 1 <= n; ++k) {
      ++report.checked;
      IdentityRow row{n, k, 1, alternating_sum(n, k, 1), Integer(1)};
      if (!row.ok()) report.violations.push_back(std::move(row));
    }
  return report;
}

/// Lexicographically smallest (n,k,l) with S(n,k,l) != 1, searching l >= 2,
/// or only l == *only_l when given.
inline std::optional<IdentityRow> find_star_violation(unsigned long n_max,
                                                      std::optional<unsigned long> only_l = std::nullopt) {
  if (n_max < 3) throw DomainError("n_max must be at least 3");
  for (unsigned long n = 2; n <= n_max; ++n)
    for (unsigned long k = 0; k + 1 <= n; ++k)
      for (unsigned long l = 1; l < n && k <= n - l; ++l) {
        if (only_l ? l != *only_l : l < 2) continue;
        IdentityRow row{n, k, l, alternating_sum(n, k, l), Integer(1)};
        if (!row.ok()) return row;
      }
  return std::nullopt;
}

/// sum_{j=0}^{r} G(a, r-j) G(b, j) - G(a+b, r) with G the generalized binomial.
inline Integer chu_vandermonde_check(const Integer& a, const Integer& b, unsigned long r) {
  Integer s = 0;
  for (unsigned long j = 0; j <= r; ++j) s += generalized_binomial(a, r - j) * generalized_binomial(b, j);
  return s - generalized_binomial(a + b, r);
}

struct VandermondeViolation {
  long a, b, r;
  Integer residual;
};

struct VandermondeReport {
  long bound = 0;
  std::size_t checked = 0;
  std::vector<VandermondeViolation> violations;
  bool all_hold() const { return violations.empty(); }
};

/// Chu-Vandermonde over |a|, |b| <= bound and 0 <= r <= bound.
inline VandermondeReport verify_chu_vandermonde(long bound) {
  VandermondeReport report;
  report.bound = bound;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long r = 0; r <= bound; ++r) {
        ++report.checked;
        Integer residual = chu_vandermonde_check(a, b, static_cast<unsigned long>(r));
        if (residual != 0) report.violations.push_back({a, b, r, std::move(residual)});
      }
  return report;
}

}  // namespace binavg
