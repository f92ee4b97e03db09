#include <gtest/gtest.h>

#include <random>
#include <set>

#include "towercert/errors.hpp"
#include "towercert/finite_field.hpp"

namespace towercert::ff {
namespace {

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= n; p += 2) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

TEST(IsPrime, SmallValuesAgainstTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool expected = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && expected; ++d) expected = n % d != 0;
    EXPECT_EQ(is_prime(n), expected) << n;
  }
}

TEST(IsPrime, LargeKnownValues) {
  EXPECT_TRUE(is_prime(2147483647ULL));
  EXPECT_FALSE(is_prime(2147483649ULL));
  EXPECT_TRUE(is_prime(1000000007ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(PrimeField, RejectsBadCharacteristic) {
  EXPECT_THROW(PrimeField(2), ValidationError);
  EXPECT_THROW(PrimeField(9), ValidationError);
  EXPECT_THROW(PrimeField(1), ValidationError);
  EXPECT_THROW(PrimeField(kMaxCharacteristic + 11), ValidationError);
}

TEST(QuadChar, HandValues) {
  const PrimeField f7(7);
  EXPECT_EQ(quad_char(0, f7), 0);
  EXPECT_EQ(quad_char(1, f7), 1);
  EXPECT_EQ(quad_char(2, f7), 1);
  EXPECT_EQ(quad_char(3, f7), -1);
  EXPECT_EQ(quad_char(4, f7), 1);
  EXPECT_EQ(quad_char(5, f7), -1);
  EXPECT_EQ(quad_char(6, f7), -1);
}

TEST(QuadChar, MultiplicativeAndBalanced) {
  for (auto p : odd_primes_up_to(200)) {
    const PrimeField f(p);
    const QuadCharTable table(f);
    int residues = 0;
    for (Residue a = 1; a < p; ++a) {
      residues += quad_char(a, f) == 1;
      EXPECT_EQ(table(a), quad_char(a, f));
      for (Residue b = 1; b < p; b += 7) {
        EXPECT_EQ(quad_char(f.mul(a, b), f), quad_char(a, f) * quad_char(b, f));
      }
    }
    EXPECT_EQ(residues, static_cast<int>((p - 1) / 2)) << p;
  }
}

TEST(ExtensionField, CanonicalModuli) {
  const auto f9 = ExtensionField::build(PrimeField(3), 2);
  EXPECT_EQ(std::vector<Residue>(f9.modulus().begin(), f9.modulus().end()), (std::vector<Residue>{1, 0}));
  const auto f25 = ExtensionField::build(PrimeField(5), 2);
  EXPECT_EQ(std::vector<Residue>(f25.modulus().begin(), f25.modulus().end()), (std::vector<Residue>{2, 0}));
  const auto f343 = ExtensionField::build(PrimeField(7), 3);
  const auto m = f343.modulus();
  for (Residue x = 0; x < 7; ++x) {
    const Residue v = (x * x * x + m[1] * x + m[0]) % 7;
    EXPECT_NE(v, 0U);
  }
  EXPECT_EQ(m[2], 0U);
  EXPECT_EQ(static_cast<std::uint64_t>(f343.order()), 343U);
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint64_t, int>> {};

TEST_P(FieldAxioms, RandomSamples) {
  const auto [p, r] = GetParam();
  const auto k = ExtensionField::build(PrimeField(p), r);
  const auto q = static_cast<std::uint64_t>(k.order());
  std::mt19937_64 rng(p * 31 + r);
  std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
  const ExtElement one = k.embed(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = k.element_at(pick(rng));
    const auto b = k.element_at(pick(rng));
    const auto c = k.element_at(pick(rng));
    EXPECT_EQ(k.mul(a, b), k.mul(b, a));
    EXPECT_EQ(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
    EXPECT_EQ(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
    EXPECT_EQ(k.sub(k.add(a, b), b), a);
    if (!k.is_zero(a)) {
      EXPECT_EQ(k.mul(a, k.inv(a)), one);
      EXPECT_EQ(k.pow(a, q - 1), one);
    }
    EXPECT_EQ(k.frobenius(a), k.pow(a, p));
    EXPECT_EQ(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
    EXPECT_EQ(count_square_roots(k, a), count_square_roots_by_norm(k, a));
  }
}

INSTANTIATE_TEST_SUITE_P(Small, FieldAxioms,
                         ::testing::Values(std::pair{3ULL, 1}, std::pair{3ULL, 2}, std::pair{3ULL, 3},
                                           std::pair{5ULL, 2}, std::pair{7ULL, 3}, std::pair{13ULL, 2},
                                           std::pair{101ULL, 3}, std::pair{65537ULL, 2}));

TEST(ExtensionField, FrobeniusFixesExactlyPrimeField) {
  for (std::uint64_t p : {3, 5, 7}) {
    for (int r = 1; r <= 3; ++r) {
      const auto k = ExtensionField::build(PrimeField(p), r);
      const auto q = static_cast<std::uint64_t>(k.order());
      std::uint64_t fixed = 0;
      for (std::uint64_t i = 0; i < q; ++i) {
        const auto a = k.element_at(i);
        const bool is_fixed = k.frobenius(a) == a;
        EXPECT_EQ(is_fixed, k.in_prime_field(a));
        fixed += is_fixed;
      }
      EXPECT_EQ(fixed, p);
    }
  }
}

TEST(ExtensionField, EnumerationIsABijection) {
  const auto k = ExtensionField::build(PrimeField(5), 3);
  std::set<std::array<Residue, 3>> seen;
  for (std::uint64_t i = 0; i < 125; ++i) seen.insert(k.element_at(i).c);
  EXPECT_EQ(seen.size(), 125U);
}

TEST(ExtensionField, QuadraticModulusNorm) {
  for (auto p : odd_primes_up_to(60)) {
    const PrimeField f(p);
    const auto k = ExtensionField::build(f, 2);
    EXPECT_EQ(quad_char(f.neg(k.modulus()[0]), f), -1);
    EXPECT_EQ(k.norm(k.generator_t()), k.modulus()[0]);
  }
}

TEST(ExtensionField, PrimitiveElementsAreNonSquares) {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    for (int r = 1; r <= 3; ++r) {
      const auto k = ExtensionField::build(PrimeField(p), r);
      const auto q = static_cast<std::uint64_t>(k.order());
      int primitive = 0;
      for (std::uint64_t i = 1; i < q; ++i) {
        const auto a = k.element_at(i);
        std::uint64_t order = 1;
        for (auto x = a; x != k.embed(1); x = k.mul(x, a)) ++order;
        if (order != q - 1) continue;
        ++primitive;
        EXPECT_EQ(count_square_roots(k, a), 0);
        EXPECT_EQ(count_square_roots_by_norm(k, a), 0);
      }
      EXPECT_GT(primitive, 0);
    }
  }
}

TEST(ExtensionField, EveryPrimeFieldElementIsASquareInEvenDegree) {
  for (auto p : odd_primes_up_to(40)) {
    const auto k = ExtensionField::build(PrimeField(p), 2);
    for (Residue a = 1; a < p; ++a) EXPECT_EQ(count_square_roots(k, k.embed(a)), 2);
  }
}

TEST(ExtensionField, OddDegreePreservesQuadraticCharacter) {
  for (auto p : odd_primes_up_to(30)) {
    const PrimeField f(p);
    const auto k = ExtensionField::build(f, 3);
    for (Residue a = 0; a < p; ++a) EXPECT_EQ(count_square_roots(k, k.embed(a)), 1 + quad_char(a, f));
  }
}

}  // namespace
}  // namespace towercert::ff
