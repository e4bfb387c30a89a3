#include "binavg/binomial.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"

namespace binavg {
namespace {

using Seq = Sequence<Rational>;
using Profile = WeightProfile<Rational>;

ExactScalar q(long p, long d = 1) { return ExactScalar(oracle::rat(p, d)); }

std::vector<Rational> row_of(std::size_t N, const Rational& r) {
  auto row = weights_row(N, r);
  return {row.weights().begin(), row.weights().end()};
}

TEST(WeightsRow, Examples) {
  EXPECT_EQ(row_of(0, oracle::rat(3, 7)), std::vector<Rational>{Rational(1)});
  EXPECT_EQ(row_of(2, oracle::rat(1, 2)), (std::vector<Rational>{oracle::rat(1, 4), oracle::rat(1, 2), oracle::rat(1, 4)}));
  const std::vector<Rational> third{oracle::rat(8, 27), oracle::rat(12, 27), oracle::rat(6, 27), oracle::rat(1, 27)};
  ASSERT_EQ(oracle::binomial_weights(3, oracle::rat(1, 3)), third);
  EXPECT_EQ(row_of(3, oracle::rat(1, 3)), third);
}

TEST(WeightsRow, MatchesDefinitionAndSumsToOne) {
  for (const Rational& r : {oracle::rat(1, 4), oracle::rat(1, 3), oracle::rat(1, 2), oracle::rat(2, 3)}) {
    BinomialRow<Rational> row(r);
    for (std::size_t N = 0; N <= 40; ++N) {
      if (N) row.advance();
      EXPECT_EQ(row.total(), Rational(1)) << N;
      auto expected = oracle::binomial_weights(N, r);
      ASSERT_EQ(row.weights().size(), expected.size());
      for (std::size_t n = 0; n <= N; ++n) {
        EXPECT_EQ(row.weights()[n], expected[n]);
        EXPECT_GT(row.weights()[n], 0);
      }
    }
  }
}

TEST(WeightsRow, PaddedPascalCombination) {
  const Rational r(2, 5);
  for (std::size_t N = 0; N < 30; ++N) {
    auto cur = row_of(N, r), next = row_of(N + 1, r);
    for (std::size_t n = 0; n <= N + 1; ++n) {
      Rational left = n >= 1 ? cur[n - 1] : Rational(0);
      Rational here = n <= N ? cur[n] : Rational(0);
      EXPECT_EQ(next[n], Rational(r * left + (1 - r) * here));
    }
  }
}

TEST(WeightsRow, FloatSumStaysNearOne) {
  for (int i = 1; i <= 9; ++i) {
    BinomialRow<double> row(i / 10.0);
    for (std::size_t N = 1; N <= 2000; ++N) {
      row.advance();
      ASSERT_LE(std::abs(row.total() - 1.0), 1e-12) << "r=" << i / 10.0 << " N=" << N;
    }
  }
}

TEST(WeightsRow, RejectsROutsideUnitInterval) {
  EXPECT_THROW(weights_row(3, Rational(0)), DomainError);
  EXPECT_THROW(weights_row(3, Rational(1)), DomainError);
  EXPECT_THROW(weights_row(3, 1.5), DomainError);
  EXPECT_THROW(binomial_average(Seq::constant(q(1)), 3, oracle::rat(-1, 2)), DomainError);
}

TEST(BinomialAverage, Examples) {
  EXPECT_EQ(binomial_average(Seq::constant(q(1)), 7, oracle::rat(3, 10)), q(1));
  EXPECT_EQ(binomial_average(Seq::geometric(q(-1)), 5, oracle::rat(1, 2)), q(0));
  auto thirds = Seq::convolved(Seq::constant(q(1)), Profile::finite({q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_EQ(binomial_average(thirds, 4, oracle::rat(1, 2)), q(7, 8));
}

TEST(BinomialAverage, FloatConstantIsOneToRounding) {
  EXPECT_NEAR(binomial_average(Sequence<double>::constant(FloatScalar(1)), 7, 0.3).re, 1.0, 1e-15);
}

TEST(BinomialAverage, GeometricClosedForm) {
  // E_N(z^n) = (r z + 1 - r)^N
  oracle::RationalGen gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    ExactScalar z = gen.next_complex();
    Rational r = oracle::rat(1 + trial % 7, 8);
    for (std::size_t N = 0; N <= 12; ++N)
      EXPECT_EQ(binomial_average(Seq::geometric(z), N, r), pow(ExactScalar(r) * z + ExactScalar(Rational(1 - r)), N));
  }
}

TEST(BinomialAverage, CounterexampleClosedForm) {
  // E_N = 1 - (N+2)/(3 * 2^N) for the (1/3, 2/3, 1, 1, ...) sequence at r = 1/2
  auto thirds = Seq::convolved(Seq::constant(q(1)), Profile::finite({q(1, 3), q(1, 3), q(1, 3)}));
  auto sweep = binomial_sweep(thirds, 40, oracle::rat(1, 2));
  auto values = thirds.prefix(40);
  for (std::size_t N = 0; N <= 40; ++N) {
    Rational closed = 1 - Rational(static_cast<long>(N + 2)) / (3 * pow(Rational(2), N));
    EXPECT_EQ(sweep[N], ExactScalar(closed)) << N;
    EXPECT_EQ(sweep[N], oracle::binomial_average(values, N, oracle::rat(1, 2)));
  }
}

TEST(BinomialSweep, Examples) {
  EXPECT_EQ(binomial_sweep(Seq::constant(q(5, 2)), 3, oracle::rat(1, 3)), std::vector<ExactScalar>(4, q(5, 2)));
  EXPECT_EQ(binomial_sweep(Seq::geometric(q(1)), 2, oracle::rat(2, 5)), std::vector<ExactScalar>(3, q(1)));
  EXPECT_EQ(binomial_sweep(Seq::geometric(q(-1)), 3, oracle::rat(1, 2)), (std::vector<ExactScalar>{q(1), q(0), q(0), q(0)}));
}

TEST(BinomialSweep, FloatAgreesWithDirectFormula) {
  auto x = Sequence<double>::periodic({FloatScalar(1), FloatScalar(-2), FloatScalar(0.5)});
  auto sweep = binomial_sweep(x, 60, 0.37);
  std::vector<double> xs;
  for (const auto& v : x.prefix(60)) xs.push_back(v.re);
  for (std::size_t N = 0; N <= 60; N += 6) EXPECT_NEAR(sweep[N].re, oracle::binomial_average(xs, N, 0.37), 1e-12);
}

TEST(OneStepRecurrence, Examples) {
  EXPECT_EQ(check_one_step_recurrence(Seq::constant(q(5)), 3, oracle::rat(1, 4)), q(0));
  EXPECT_EQ(check_one_step_recurrence(Seq::geometric(q(2)), 2, oracle::rat(1, 2)), q(0));
  EXPECT_EQ(check_one_step_recurrence(Seq::periodic({q(1), q(-1)}), 4, oracle::rat(1, 3)), q(0));
  EXPECT_THROW(check_one_step_recurrence(Seq::constant(q(5)), 0, oracle::rat(1, 4)), DomainError);
}

TEST(KStepExpansion, Examples) {
  EXPECT_EQ(check_k_step_expansion(Seq::constant(q(1)), 2, 3, oracle::rat(1, 2)), q(0));
  EXPECT_EQ(check_k_step_expansion(Seq::geometric(q(-1)), 3, 2, oracle::rat(1, 3)), q(0));
  auto x = Seq::periodic({q(3), q(-1, 2), q(7)});
  for (std::size_t N = 1; N < 6; ++N)
    EXPECT_EQ(check_k_step_expansion(x, N, 1, oracle::rat(2, 9)), check_one_step_recurrence(x, N, oracle::rat(2, 9)));
  EXPECT_THROW(check_k_step_expansion(x, 2, 0, oracle::rat(1, 2)), DomainError);
}

TEST(KStepExpansion, ExactZeroOnRandomSequences) {
  oracle::RationalGen gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = Seq::from_values("random", gen.values(30));
    Rational r = oracle::rat(1 + trial % 5, 6);
    for (std::size_t N = 1; N <= 15; N += 2)
      for (std::size_t k = 1; k <= 10; k += 3) {
        EXPECT_EQ(check_k_step_expansion(x, N, k, r), q(0));
      }
    EXPECT_EQ(check_one_step_recurrence(x, 20, r), q(0));
  }
}

TEST(KStepExpansion, FloatResidualIsRoundingSized) {
  auto x = Sequence<double>::periodic({FloatScalar(1), FloatScalar(-1, 0.5)});
  EXPECT_LT(magnitude(check_k_step_expansion(x, 40, 7, 0.3)), 1e-13);
}

TEST(SupBound, Examples) {
  auto ones = check_sup_bound(Seq::constant(q(1)), 10, oracle::rat(1, 2));
  EXPECT_TRUE(ones.holds);
  for (double m : ones.margins) EXPECT_GT(m, 0);

  auto delta = check_sup_bound(Seq::from_values("delta", {q(1), q(0), q(0), q(0), q(0), q(0)}), 5, oracle::rat(1, 2));
  EXPECT_TRUE(delta.holds);
  EXPECT_EQ(delta.margins.size(), 5u);

  auto alt = check_sup_bound(Sequence<double>::periodic({FloatScalar(1), FloatScalar(-1)}), 50, 0.25);
  EXPECT_TRUE(alt.holds);
  EXPECT_EQ(alt.first_failure, 0u);
}

TEST(SupBound, RandomBoundedSequences) {
  oracle::RationalGen gen(33);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = Seq::from_values("random", gen.values(41));
    EXPECT_TRUE(check_sup_bound(x, 40, oracle::rat(1, 3)).holds);
  }
}

}  // namespace
}  // namespace binavg
