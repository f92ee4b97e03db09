#include <gtest/gtest.h>

#include <random>

#include "towercert/errors.hpp"
#include "towercert/lambda_algebra.hpp"

namespace towercert::lambda {
namespace {

BigInt pow_big(std::uint64_t p, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// p^mu times a series whose first unit coefficient sits at index lambda.
struct RandomSeries {
  std::mt19937_64 rng;
  PadicSeries make(std::uint64_t p, int prec_p, int prec_x, int mu, int lambda) {
    const BigInt m = pow_big(p, prec_p);
    std::vector<BigInt> c(static_cast<std::size_t>(prec_x));
    for (int i = 0; i < prec_x; ++i) {
      BigInt v = 0;
      for (int d = 0; d < prec_p; ++d) v = v * p + rng() % p;
      if (i < lambda) v = (v * p) % m;
      if (i == lambda && v % p == 0) v += 1 + rng() % (p - 1);
      c[static_cast<std::size_t>(i)] = v * pow_big(p, mu);
    }
    return PadicSeries(p, prec_p, prec_x, c);
  }
  int uniform(int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

TEST(PadicSeries, ReducesAndTruncates) {
  const PadicSeries f(5, 2, 3, {-1, 30, 7, 9});
  EXPECT_EQ(f.prec_x(), 3);
  EXPECT_EQ(f.coeff(0), 24);
  EXPECT_EQ(f.coeff(1), 5);
  EXPECT_EQ(f.coeff(2), 7);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_THROW(PadicSeries(4, 2, 3, {1}), ValidationError);
  EXPECT_THROW(PadicSeries(5, 0, 3, {1}), ValidationError);
  EXPECT_THROW(PadicSeries(5, 2, 0, {1}), ValidationError);
}

TEST(PadicSeries, ArithmeticTakesMinimumPrecision) {
  const PadicSeries a(5, 3, 4, {1, 1});
  const PadicSeries b(5, 2, 6, {1, 4});
  const auto s = a + b;
  EXPECT_EQ(s.prec_p(), 2);
  EXPECT_EQ(s.prec_x(), 4);
  EXPECT_EQ(s.coeff(1), 5);
  const auto prod = a * b;  // 1 + 5x + 4x^2
  EXPECT_EQ(prod.coeff(0), 1);
  EXPECT_EQ(prod.coeff(1), 5);
  EXPECT_EQ(prod.coeff(2), 4);
  EXPECT_EQ((a - a).is_indeterminate(), true);
  EXPECT_THROW(a + PadicSeries(7, 3, 4, {1}), ValidationError);
}

TEST(PadicSeries, ShiftRaisesPrecision) {
  const PadicSeries a(5, 3, 4, {2, 1});
  const auto s = a.shifted_by_p(2);
  EXPECT_EQ(s.prec_p(), 5);
  EXPECT_EQ(s.coeff(0), 50);
  EXPECT_THROW(a.with_precision(4, 4), PrecisionError);
}

TEST(Invariants, HandExamples) {
  EXPECT_EQ(mu_invariant(PadicSeries(5, 20, 64, {5, 1})), 0);
  EXPECT_EQ(lambda_invariant(PadicSeries(5, 20, 64, {5, 1})), 1);
  EXPECT_EQ(mu_invariant(PadicSeries(5, 20, 64, {25, 0, 5})), 1);
  EXPECT_EQ(lambda_invariant(PadicSeries(5, 20, 64, {25, 0, 5})), 2);
  EXPECT_EQ(mu_invariant(PadicSeries(7, 20, 64, {343})), 3);
  EXPECT_EQ(lambda_invariant(PadicSeries(7, 20, 64, {343})), 0);
  EXPECT_EQ(lambda_invariant(PadicSeries(5, 20, 64, {3, 5, 1})), 0);
}

TEST(Invariants, IndeterminateSeriesRejected) {
  EXPECT_THROW(mu_invariant(PadicSeries(5, 3, 8, {125, 0, 250})), PrecisionError);
  EXPECT_THROW(lambda_invariant(PadicSeries(5, 3, 8, {})), PrecisionError);
  EXPECT_THROW(weierstrass_prepare(PadicSeries(5, 3, 8, {0})), PrecisionError);
}

TEST(EvaluateAtZero, HandExamples) {
  const auto a = evaluate_at_zero(PadicSeries(5, 20, 64, {5, 1}));
  EXPECT_EQ(a.residue, 5);
  EXPECT_EQ(a.valuation, 1);
  const auto b = evaluate_at_zero(PadicSeries(5, 20, 64, {1, 1}));
  EXPECT_EQ(b.residue, 1);
  EXPECT_EQ(b.valuation, 0);
  const auto c = evaluate_at_zero(PadicSeries(5, 4, 64, {0, 1}));
  EXPECT_EQ(c.valuation, 4);
  EXPECT_EQ(c.precision, 4);
}

TEST(Weierstrass, HandExamples) {
  const auto a = weierstrass_prepare(PadicSeries(5, 20, 64, {5, 1}));
  EXPECT_EQ(a.mu, 0);
  EXPECT_EQ(a.lambda(), 1);
  EXPECT_EQ(a.distinguished.coeff(0), 5);
  EXPECT_EQ(a.distinguished.coeff(1), 1);
  EXPECT_EQ(a.unit, PadicSeries::one(5, 20, 64));

  const auto b = weierstrass_prepare(PadicSeries(3, 20, 64, {0, 3}));
  EXPECT_EQ(b.mu, 1);
  EXPECT_EQ(b.lambda(), 1);
  EXPECT_EQ(b.distinguished.coeff(0), 0);
  EXPECT_EQ(b.unit.coeff(0), 1);
  EXPECT_EQ(b.unit.degree(), 0);
  EXPECT_EQ(b.distinguished.prec_p(), 19);

  const PadicSeries f(5, 20, 64, {1, 5});
  const auto c = weierstrass_prepare(f);
  EXPECT_EQ(c.mu, 0);
  EXPECT_EQ(c.lambda(), 0);
  EXPECT_EQ(c.unit, f);
}

TEST(Weierstrass, NonTrivialUnit) {
  // 10 + 5x + 3x^2 + x^3 at p = 5: lambda 2, unit of degree 1 with constant
  // term 3 mod 5, and the product reproduces the input exactly.
  const PadicSeries f(5, 12, 16, {10, 5, 3, 1});
  const auto w = weierstrass_prepare(f);
  EXPECT_EQ(w.mu, 0);
  EXPECT_EQ(w.lambda(), 2);
  std::vector<BigInt> poly(w.distinguished.coeffs().begin(), w.distinguished.coeffs().begin() + 3);
  EXPECT_TRUE(is_distinguished(poly, 5));
  EXPECT_EQ(w.unit.coeff(0) % 5, 3);
  EXPECT_EQ(w.distinguished * w.unit, f);
}

class RoundTrip : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RoundTrip, ThousandRandomInputs) {
  const std::uint64_t p = GetParam();
  RandomSeries gen{std::mt19937_64(p)};
  for (int trial = 0; trial < 1000; ++trial) {
    const int prec_p = gen.uniform(2, 12);
    const int prec_x = gen.uniform(1, 14);
    const int mu = gen.uniform(0, prec_p - 1);
    const int lambda = gen.uniform(0, prec_x - 1);
    const auto f = gen.make(p, prec_p, prec_x, mu, lambda);
    const auto w = weierstrass_prepare(f);
    ASSERT_EQ(w.mu, mu);
    ASSERT_EQ(w.lambda(), lambda);
    ASSERT_EQ(w.distinguished.prec_p(), prec_p - mu);
    std::vector<BigInt> poly(w.distinguished.coeffs().begin(),
                             w.distinguished.coeffs().begin() + lambda + 1);
    ASSERT_TRUE(is_distinguished(poly, p));
    ASSERT_NE(w.unit.coeff(0) % p, 0);
    ASSERT_EQ((w.distinguished * w.unit).shifted_by_p(mu), f) << "trial " << trial;
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, RoundTrip, ::testing::Values(5, 7, 13));

TEST(Invariants, AdditiveUnderMultiplication) {
  for (std::uint64_t p : {5, 7, 13}) {
    RandomSeries gen{std::mt19937_64(p * 101)};
    for (int trial = 0; trial < 1000; ++trial) {
      const int prec_p = 16;
      const int prec_x = 20;
      const int mu_f = gen.uniform(0, 6), mu_g = gen.uniform(0, 6);
      const int la_f = gen.uniform(0, 9), la_g = gen.uniform(0, 9);
      const auto f = gen.make(p, prec_p, prec_x, mu_f, la_f);
      const auto g = gen.make(p, prec_p, prec_x, mu_g, la_g);
      const auto fg = f * g;
      ASSERT_EQ(mu_invariant(fg), mu_f + mu_g);
      ASSERT_EQ(lambda_invariant(fg), la_f + la_g);
    }
  }
}

TEST(Invariants, ConstantTermValuation) {
  for (std::uint64_t p : {5, 7, 13}) {
    RandomSeries gen{std::mt19937_64(p * 977)};
    for (int trial = 0; trial < 1000; ++trial) {
      const int prec_p = gen.uniform(2, 10);
      const int prec_x = gen.uniform(1, 12);
      const auto f = gen.make(p, prec_p, prec_x, gen.uniform(0, prec_p - 1), gen.uniform(0, prec_x - 1));
      const int v0 = evaluate_at_zero(f).valuation;
      const int mu = mu_invariant(f);
      const int lambda = lambda_invariant(f);
      ASSERT_EQ(v0 == 0, mu == 0 && lambda == 0);
      ASSERT_GE(v0, mu);
      ASSERT_EQ(v0 == mu, lambda == 0);
    }
  }
}

TEST(CharElement, HandExamples) {
  const std::vector<ElementaryDivisor> none;
  const auto one = char_element(none, 5);
  EXPECT_EQ(one, PadicSeries::one(5, kDefaultPrecP, kDefaultPrecX));
  EXPECT_EQ(mu_invariant(one), 0);
  EXPECT_EQ(lambda_invariant(one), 0);

  const std::vector<ElementaryDivisor> pp{PPowerDivisor{2}};
  const auto c = char_element(pp, 5);
  EXPECT_EQ(c.coeff(0), 25);
  EXPECT_EQ(c.degree(), 0);
  EXPECT_EQ(mu_invariant(c), 2);
  EXPECT_EQ(lambda_invariant(c), 0);

  const std::vector<ElementaryDivisor> polys{DistinguishedDivisor{{5, 1}}, DistinguishedDivisor{{5, 5, 1}}};
  const auto d = char_element(polys, 5);
  EXPECT_EQ(d.degree(), 3);
  EXPECT_EQ(lambda_invariant(d), 3);
  EXPECT_EQ(mu_invariant(d), 0);
  EXPECT_EQ(d.coeff(0), 25);
  EXPECT_EQ(d.coeff(1), 30);
  EXPECT_EQ(d.coeff(2), 10);
  EXPECT_EQ(d.coeff(3), 1);

  const std::vector<ElementaryDivisor> bad{DistinguishedDivisor{{1, 1}}};
  EXPECT_THROW(char_element(bad, 5), ValidationError);
  const std::vector<ElementaryDivisor> negative{PPowerDivisor{-1}};
  EXPECT_THROW(char_element(negative, 5), ValidationError);
}

TEST(CharElement, InvariantsAreSums) {
  std::mt19937_64 rng(4242);
  for (std::uint64_t p : {5, 7, 13}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<ElementaryDivisor> divisors;
      int mu = 0, lambda = 0;
      const int n = static_cast<int>(rng() % 5);
      for (int i = 0; i < n; ++i) {
        if (rng() % 2) {
          const int m = static_cast<int>(rng() % 3);
          divisors.push_back(PPowerDivisor{m});
          mu += m;
        } else {
          const int deg = 1 + static_cast<int>(rng() % 3);
          std::vector<BigInt> poly;
          for (int k = 0; k < deg; ++k) poly.push_back(BigInt(p) * (rng() % 50));
          poly.push_back(1);
          divisors.push_back(DistinguishedDivisor{poly});
          lambda += deg;
        }
      }
      const auto c = char_element(divisors, p);
      ASSERT_EQ(mu_invariant(c), mu);
      ASSERT_EQ(lambda_invariant(c), lambda);
      const auto w = weierstrass_prepare(c);
      ASSERT_EQ(w.mu, mu);
      ASSERT_EQ(w.lambda(), lambda);
    }
  }
}

}  // namespace
}  // namespace towercert::lambda
