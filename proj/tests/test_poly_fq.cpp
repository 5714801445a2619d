#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace ffgpd;

namespace {

PolyFq P(const FieldPtr& f, std::vector<PolyFq::Coeff> c) { return PolyFq(f, std::move(c)); }

}  // namespace

TEST(PolyFq, ArithmeticExamples) {
  auto F2 = FieldCtx::make(2);
  EXPECT_EQ(P(F2, {1, 1}) * P(F2, {1, 1}), P(F2, {1, 0, 1}));
  auto [quo, rem] = divrem(P(F2, {1, 0, 0, 1}), P(F2, {1, 1}));
  EXPECT_EQ(quo, P(F2, {1, 1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(P(F2, {1, 1}) + PolyFq(F2), P(F2, {1, 1}));
  EXPECT_EQ(PolyFq(F2).degree(), PolyFq::kZeroDegree);
}

TEST(PolyFq, GcdExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  EXPECT_EQ(gcd(P(F2, {1, 0, 1}), P(F2, {1, 1})), P(F2, {1, 1}));
  EXPECT_EQ(gcd(P(F3, {2, 0, 2}), PolyFq(F3)), P(F3, {1, 0, 1}));
  EXPECT_EQ(gcd(P(F3, {2, 0, 1}), P(F3, {2, 1})), P(F3, {2, 1}));
  EXPECT_THROW(gcd(PolyFq(F3), PolyFq(F3)), PreconditionError);
}

TEST(PolyFq, DerivativeExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  EXPECT_EQ(derivative(P(F2, {1, 1, 1})), PolyFq::one(F2));
  EXPECT_EQ(derivative(P(F3, {0, 1, 0, 1})), PolyFq::one(F3));
  EXPECT_TRUE(derivative(P(F3, {2})).is_zero());
}

TEST(PolyFq, FactorExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  const Factorization a = factor(P(F2, {0, 1, 0, 0, 1}));
  ASSERT_EQ(a.factors.size(), 3u);
  EXPECT_EQ(a.factors[0].first, P(F2, {0, 1}));
  EXPECT_EQ(a.factors[1].first, P(F2, {1, 1}));
  EXPECT_EQ(a.factors[2].first, P(F2, {1, 1, 1}));

  const Factorization b = factor(P(F2, {1, 0, 1}));
  ASSERT_EQ(b.factors.size(), 1u);
  EXPECT_EQ(b.factors[0], std::make_pair(P(F2, {1, 1}), 2u));

  const Factorization c = factor(P(F3, {1, 1, 1}));
  ASSERT_EQ(c.factors.size(), 1u);
  EXPECT_EQ(c.factors[0], std::make_pair(P(F3, {2, 1}), 2u));

  const Factorization d = factor(P(F3, {2, 0, 2}));
  EXPECT_EQ(d.unit.value(), 2u);
  EXPECT_EQ(d.expand(), P(F3, {2, 0, 2}));
}

TEST(PolyFq, IrreducibilityExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  EXPECT_TRUE(irreducible_test(P(F2, {1, 1, 1})));
  EXPECT_FALSE(irreducible_test(P(F2, {1, 0, 1})));
  EXPECT_TRUE(irreducible_test(P(F3, {1, 0, 1})));
  EXPECT_THROW(irreducible_test(P(F3, {1})), PreconditionError);
}

TEST(PolyFq, IrreducibilityMatchesTrialDivision) {
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (std::uint32_t d = 1; d <= (f->q() == 2 ? 8u : 4u); ++d)
      for (const auto& g : oracle::monics(f, d)) ASSERT_EQ(irreducible_test(g), oracle::irreducible(g)) << d;
}

TEST(PolyFq, CountAndEnumerateIrreducibles) {
  EXPECT_EQ(count_irreducibles(2, 1), 2u);
  EXPECT_EQ(count_irreducibles(2, 4), 3u);
  EXPECT_EQ(count_irreducibles(3, 2), 3u);
  auto F2 = FieldCtx::make(2);
  EXPECT_EQ(enumerate_irreducibles(F2, 1), (std::vector<PolyFq>{P(F2, {0, 1}), P(F2, {1, 1})}));
  EXPECT_EQ(enumerate_irreducibles(F2, 2), (std::vector<PolyFq>{P(F2, {1, 1, 1})}));
  EXPECT_EQ(enumerate_irreducibles(F2, 3), (std::vector<PolyFq>{P(F2, {1, 1, 0, 1}), P(F2, {1, 0, 1, 1})}));
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (std::uint32_t d = 1; d <= 4; ++d) {
      std::size_t brute = 0;
      for (const auto& g : oracle::monics(f, d)) brute += oracle::irreducible(g);
      EXPECT_EQ(count_irreducibles(f->q(), d), brute);
      EXPECT_EQ(enumerate_irreducibles(f, d).size(), brute);
    }
}

TEST(PolyFq, PrimeCountingBound) {
  // sum_{e <= d} e N_e stays below q^d / (1 - 1/q) and approaches it.
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    std::uint64_t sum = 0, qd = 1;
    for (std::uint32_t d = 1; d <= 12; ++d) {
      sum += d * count_irreducibles(q, d);
      qd *= q;
      const double bound = static_cast<double>(qd) * q / (q - 1.0);
      EXPECT_LE(static_cast<double>(sum), bound);
      if (d >= 8) {
        EXPECT_GT(static_cast<double>(sum), 0.9 * bound);
      }
    }
  }
}

TEST(PolyFq, FactorMatchesTrialDivision) {
  std::mt19937_64 rng(7);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2), FieldCtx::make(5)}) {
    for (int trial = 0; trial < 150; ++trial) {
      const PolyFq a = random_poly(f, 1 + trial % 9, rng);
      if (a.degree() < 1) continue;
      const Factorization got = factor(a, trial);
      std::map<PolyFq, std::uint32_t> mine(got.factors.begin(), got.factors.end());
      ASSERT_EQ(mine, oracle::factor(a));
      ASSERT_EQ(got.expand(), a);
    }
  }
}

TEST(PolyFq, FactorIsSeedIndependentAndSorted) {
  std::mt19937_64 rng(11);
  for (auto f : {FieldCtx::make(3), FieldCtx::make(2, 2), FieldCtx::make(2, 3)})
    for (int trial = 0; trial < 50; ++trial) {
      const PolyFq a = random_poly(f, 12, rng);
      if (a.is_zero()) continue;
      const Factorization x = factor(a, 1), y = factor(a, 99);
      ASSERT_EQ(x, y);
      for (std::size_t i = 1; i < x.factors.size(); ++i) ASSERT_LT(x.factors[i - 1].first, x.factors[i].first);
      for (const auto& [g, e] : x.factors) ASSERT_TRUE(g.degree() == 1 || irreducible_test(g));
    }
}

TEST(PolyFq, MaxFactorDegreeMatchesFactorization) {
  std::mt19937_64 rng(3);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (int trial = 0; trial < 100; ++trial) {
      const PolyFq a = random_poly(f, 10, rng);
      if (a.degree() < 1) continue;
      std::uint32_t best = 0;
      for (const auto& [g, e] : factor(a).factors) best = std::max<std::uint32_t>(best, g.degree());
      ASSERT_EQ(max_factor_degree(a), best);
    }
}

TEST(PolyFq, GcdIsMultiplicative) {
  std::mt19937_64 rng(5);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (int trial = 0; trial < 100; ++trial) {
      const PolyFq a = random_poly(f, 6, rng), b = random_poly(f, 6, rng), g = random_poly(f, 4, rng);
      if (g.is_zero() || (a.is_zero() && b.is_zero())) continue;
      ASSERT_EQ(gcd(a * g, b * g), g.monic() * gcd(a, b));
    }
}

TEST(PolyFq, DivisionIdentity) {
  std::mt19937_64 rng(9);
  auto f = FieldCtx::make(3, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyFq a = random_poly(f, 10, rng), b = random_poly(f, 5, rng);
    if (b.is_zero()) continue;
    auto [quo, rem] = divrem(a, b);
    ASSERT_EQ(quo * b + rem, a);
    ASSERT_LT(rem.degree(), b.degree());
  }
  EXPECT_THROW(divrem(P(f, {1}), PolyFq(f)), PreconditionError);
}

TEST(PolyFq, PthRootInverseOfFrobenius) {
  std::mt19937_64 rng(13);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (int trial = 0; trial < 50; ++trial) {
      const PolyFq a = random_poly(f, 6, rng);
      const PolyFq ap = pow(a, f->p());
      ASSERT_TRUE(is_pth_power(ap));
      ASSERT_EQ(pth_root(ap), a);
      ASSERT_EQ(pow(a, f->q()), frobenius(a, f->q()));
    }
}

TEST(PolyFq, CanonicalOrderFollowsDegreeThenTopCoefficients) {
  auto F3 = FieldCtx::make(3);
  EXPECT_LT(P(F3, {2, 2}), P(F3, {0, 0, 1}));
  EXPECT_LT(P(F3, {2, 1}), P(F3, {0, 2}));
  EXPECT_LT(P(F3, {0, 1}), P(F3, {1, 1}));
  EXPECT_LT(PolyFq(F3), P(F3, {1}));
}
