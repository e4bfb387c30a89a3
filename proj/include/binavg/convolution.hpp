#pragma once

// Convolution summation methods x -> (sum_{k<=n} lambda_k x_{n-k})_n and the
// two candidate limit formulas for their binomial averages.

#include <cstddef>
#include <variant>

#include "binavg/numeric.hpp"
#include "binavg/sequence.hpp"
#include "binavg/weight_profile.hpp"

namespace binavg {

/// sum_{k=0}^{n} lambda_k x_{n-k}, all n+1 terms.
template <RealField Real>
Complex<Real> convolve_at(const Sequence<Real>& x, const WeightProfile<Real>& lambda, std::size_t n) {
  return Sequence<Real>::convolved(x, lambda).eval(n);
}

template <RealField Real>
Complex<Real> total_sum(const WeightProfile<Real>& lambda) {
  return lambda.total_sum();
}

template <RealField Real>
Real abs_sum(const WeightProfile<Real>& lambda) {
  return lambda.abs_sum();
}

/// L * sum_n lambda_n: the limit of the binomial averages of the convolved
/// sequence whenever the binomial averages of x tend to L.
template <RealField Real>
Complex<Real> correct_rhs(const WeightProfile<Real>& lambda, const Complex<Real>& L) {
  return L * lambda.total_sum();
}

/// L * (lambda_0 + sum_{n>=1} lambda_n r^(n-1)).
///
/// This is the known-wrong limit formula. It is kept only so the discrepancy
/// with correct_rhs can be reproduced; nothing else should rely on it.
template <RealField Real>
Complex<Real> incorrect_rhs(const WeightProfile<Real>& lambda, const Real& r, const Complex<Real>& L) {
  using Scalar = Complex<Real>;
  using Profile = WeightProfile<Real>;
  if (!(r > 0 && r < 1)) throw DomainError("r must lie in (0,1)");
  Scalar bracket = std::visit(
      [&](const auto& p) -> Scalar {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, typename Profile::FiniteSupport>) {
          Scalar s = p.values[0];
          Real rp = 1;
          for (std::size_t n = 1; n < p.values.size(); ++n) {
            s += p.values[n] * Scalar(rp);
            rp *= r;
          }
          return s;
        } else if constexpr (std::is_same_v<T, typename Profile::GeometricTail>) {
          // c + sum_{n>=1} c q^n r^(n-1) = c + c q / (1 - q r)
          return p.c + p.c * Scalar(Real(p.ratio / (1 - p.ratio * r)));
        } else {
          // (1-L) * (1 + L / (1 - L r))
          return Scalar(Real((1 - p.L) * (1 + p.L / (1 - p.L * r))));
        }
      },
      lambda.variant());
  return L * bracket;
}

}  // namespace binavg
