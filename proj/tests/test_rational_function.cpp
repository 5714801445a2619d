#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace ffgpd;

namespace {

PolyFq P(const FieldPtr& f, std::vector<PolyFq::Coeff> c) { return PolyFq(f, std::move(c)); }

RatFunc random_f(const FieldPtr& f, std::mt19937_64& rng, std::size_t max_deg) {
  for (;;) {
    PolyFq num = random_poly(f, max_deg, rng);
    PolyFq den = random_poly(f, max_deg, rng);
    if (!num.is_zero() && !den.is_zero()) return RatFunc(num, den);
  }
}

Place fin(const PolyFq& p) { return Place::finite(p); }

}  // namespace

TEST(RationalFunction, NormalizationExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  const RatFunc a(P(F2, {1, 0, 0, 1}), P(F2, {1, 1}));
  EXPECT_TRUE(a.is_polynomial());
  EXPECT_EQ(a.num(), P(F2, {1, 1, 1}));
  EXPECT_EQ(a * RatFunc::one(F2), a);
  const RatFunc inv_t(P(F3, {1}), P(F3, {0, 1}));
  EXPECT_EQ(inv_t + inv_t, RatFunc(P(F3, {2}), P(F3, {0, 1})));
  // Non-monic denominators are absorbed into the numerator.
  const RatFunc b(P(F3, {1}), P(F3, {0, 2}));
  EXPECT_EQ(b.num(), P(F3, {2}));
  EXPECT_EQ(b.den(), P(F3, {0, 1}));
  EXPECT_THROW(RatFunc(P(F3, {1}), PolyFq(F3)), PreconditionError);
  EXPECT_THROW(RatFunc(F3).inverse(), PreconditionError);
}

TEST(RationalFunction, HeightExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  EXPECT_EQ(height(RatFunc(P(F2, {1, 1, 1}))), 2u);
  EXPECT_EQ(height(RatFunc::constant(F3, 2)), 0u);
  const PolyFq den = P(F3, {0, 1}) * pow(P(F3, {1, 0, 1}), 3);
  EXPECT_EQ(height(RatFunc(P(F3, {1}), den)), 7u);
}

TEST(RationalFunction, DivisorExamples) {
  auto F2 = FieldCtx::make(2);
  const Divisor a = divisor_of(RatFunc::t(F2));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.multiplicity(fin(P(F2, {0, 1}))), 1);
  EXPECT_EQ(a.multiplicity(Place::infinity()), -1);

  const Divisor b = divisor_of(RatFunc(P(F2, {1, 1, 1})));
  EXPECT_EQ(b.multiplicity(fin(P(F2, {1, 1, 1}))), 1);
  EXPECT_EQ(b.multiplicity(Place::infinity()), -2);

  const PolyFq num = P(F2, {0, 1}) * pow(P(F2, {1, 1}), 4);
  const PolyFq den = pow(P(F2, {1, 1, 1}), 3);
  const Divisor c = divisor_of(RatFunc(num, den));
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c.multiplicity(fin(P(F2, {0, 1}))), 1);
  EXPECT_EQ(c.multiplicity(fin(P(F2, {1, 1}))), 4);
  EXPECT_EQ(c.multiplicity(fin(P(F2, {1, 1, 1}))), -3);
  EXPECT_EQ(c.multiplicity(Place::infinity()), 1);
  EXPECT_EQ(c.degree(), 0);

  EXPECT_TRUE(divisor_of(RatFunc::constant(F2, 1)).empty());
  EXPECT_THROW(divisor_of(RatFunc(F2)), PreconditionError);
}

TEST(RationalFunction, DeltaExamples) {
  auto F2 = FieldCtx::make(2);
  EXPECT_EQ(delta(RatFunc::t(F2)), 1u);
  EXPECT_EQ(delta(RatFunc(P(F2, {1, 1, 1}))), 2u);
  EXPECT_EQ(delta(RatFunc(pow(P(F2, {0, 1, 1}), 3))), 1u);
  EXPECT_THROW(delta(RatFunc::constant(F2, 1)), PreconditionError);
  EXPECT_EQ(delta_or_zero(RatFunc::constant(F2, 1)), 0u);
}

TEST(RationalFunction, PthPowerExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  const RatFunc a(P(F2, {1, 0, 1}));
  EXPECT_TRUE(is_pth_power(a));
  EXPECT_EQ(pth_root(a), RatFunc(P(F2, {1, 1})));
  EXPECT_FALSE(is_pth_power(RatFunc::t(F2)));
  const RatFunc root(P(F3, {0, 0, 1}), P(F3, {2, 1}));
  EXPECT_TRUE(is_pth_power(pow(root, 3)));
  EXPECT_EQ(pth_root(pow(root, 3)), root);
}

TEST(RationalFunction, EnumerationMatchesPairNormalization) {
  auto F2 = FieldCtx::make(2);
  const auto h1 = enumerate_f(F2, 1);
  const std::set<RatFunc> expect{RatFunc::t(F2),
                                 RatFunc(P(F2, {1, 1})),
                                 RatFunc(P(F2, {1}), P(F2, {0, 1})),
                                 RatFunc(P(F2, {1}), P(F2, {1, 1})),
                                 RatFunc(P(F2, {0, 1}), P(F2, {1, 1})),
                                 RatFunc(P(F2, {1, 1}), P(F2, {0, 1}))};
  EXPECT_EQ(std::set<RatFunc>(h1.begin(), h1.end()), expect);
  EXPECT_EQ(h1.size(), 6u);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (std::uint32_t H = 1; H <= (f->q() == 2 ? 5u : 2u); ++H) {
      const auto list = enumerate_f(f, H);
      const std::set<RatFunc> as_set(list.begin(), list.end());
      ASSERT_EQ(as_set.size(), list.size()) << "duplicates at H=" << H;
      ASSERT_EQ(as_set, oracle::height_set(f, H));
      for (const auto& g : list) ASSERT_EQ(height(g), H);
    }
  EXPECT_THROW(enumerate_f(F2, 0), PreconditionError);
}

TEST(RationalFunction, EnumerationOrder) {
  auto F2 = FieldCtx::make(2);
  const auto list = enumerate_f(F2, 2);
  for (std::size_t i = 1; i < list.size(); ++i) {
    const auto &a = list[i - 1], &b = list[i];
    const bool ordered = a.den().degree() < b.den().degree() ||
                         (a.den().degree() == b.den().degree() && (a.den() < b.den() || (a.den() == b.den() && a.num() < b.num())));
    ASSERT_TRUE(ordered) << i;
  }
}

TEST(RationalFunction, SamplingHasRequestedHeightAndIsReproducible) {
  auto F3 = FieldCtx::make(3);
  const auto a = sample_f(F3, 4, 200, 42), b = sample_f(F3, 4, 200, 42), c = sample_f(F3, 4, 200, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& f : a) EXPECT_EQ(height(f), 4u);
}

TEST(RationalFunction, PlacesDegreeSum) {
  EXPECT_EQ(places_degree_sum(2, 1), 3u);
  EXPECT_EQ(places_degree_sum(2, 2), 5u);
  EXPECT_EQ(places_degree_sum(3, 1), 4u);
  EXPECT_THROW(places_degree_sum(2, 0), PreconditionError);
}

TEST(RationalFunction, DivisorProperties) {
  std::mt19937_64 rng(17);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (int trial = 0; trial < 200; ++trial) {
      const RatFunc g = random_f(f, rng, 6);
      const Divisor D = divisor_of(g, trial);
      ASSERT_EQ(D.degree(), 0);
      ASSERT_EQ(D.positive_degree(), static_cast<std::int64_t>(height(g)));
      ASSERT_EQ(D.negative_degree(), static_cast<std::int64_t>(height(g)));
      if (g.is_constant()) continue;
      ASSERT_EQ(delta(g), oracle::delta(g));
      std::uint32_t best = 0;
      for (const auto& [Pl, m] : D.terms()) best = std::max(best, Pl.degree());
      ASSERT_EQ(delta(g), best);
      ASSERT_EQ(delta(g.scaled(FqElem::from_int(f, f->p() - 1))), delta(g));
    }
}

TEST(RationalFunction, HeightProperties) {
  std::mt19937_64 rng(19);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (int trial = 0; trial < 200; ++trial) {
      const RatFunc a = random_f(f, rng, 5), b = random_f(f, rng, 5);
      ASSERT_EQ(height(a.inverse()), height(a));
      ASSERT_EQ(height(pow(a, f->p())), f->p() * height(a));
      ASSERT_LE(height(a * b), height(a) + height(b));
      ASSERT_LE(height(a + b), height(a) + height(b));
    }
}

TEST(RationalFunction, PthPowerProperties) {
  std::mt19937_64 rng(23);
  for (auto f : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)})
    for (int trial = 0; trial < 150; ++trial) {
      const RatFunc a = random_f(f, rng, 5);
      const RatFunc ap = pow(a, f->p());
      ASSERT_TRUE(is_pth_power(ap));
      ASSERT_EQ(pth_root(ap), a);
      ASSERT_FALSE(is_pth_power(ap * RatFunc::t(f)));
      ASSERT_EQ(frobenius(a, f->q()), pow(a, f->q()));
    }
}

TEST(RationalFunction, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(29);
  auto f = FieldCtx::make(3);
  for (int trial = 0; trial < 200; ++trial) {
    const RatFunc a = random_f(f, rng, 4), b = random_f(f, rng, 4), c = random_f(f, rng, 4);
    ASSERT_EQ((a + b) * c, a * c + b * c);
    ASSERT_EQ(a * a.inverse(), RatFunc::one(f));
    ASSERT_EQ((a - b) + b, a);
    ASSERT_EQ((a / b) * b, a);
    ASSERT_EQ(rf_arith(a, b, RatOp::mul), a * b);
  }
}

TEST(RationalFunction, PlaceOrderPutsInfinityLast) {
  auto F2 = FieldCtx::make(2);
  EXPECT_LT(fin(P(F2, {0, 1})), fin(P(F2, {1, 1})));
  EXPECT_LT(fin(P(F2, {1, 1, 1})), Place::infinity());
  EXPECT_EQ(Place::infinity().degree(), 1u);
}
