#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ffgpd;

namespace {

PolyOverK K(const FieldPtr& f, const char* s) { return parse_poly_over_k(f, s); }
RatFunc R(const FieldPtr& f, const char* s) { return parse_ratfunc(f, s); }

}  // namespace

TEST(Harness, DeltaOfValueExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  // x(x+1)(x+t) at f = t^2 + 1 gives (t^2+1)(t^2)(t^2+t+1).
  EXPECT_EQ(delta_of_value(K(F2, "x*(x+1)*(x+t)"), R(F2, "t^2+1")), 2u);
  EXPECT_EQ(delta_of_value(K(F3, "x^2-t"), R(F3, "t")), 1u);
  EXPECT_THROW(delta_of_value(K(F2, "x*(x+1)*(x+t)"), R(F2, "t")), PreconditionError);
  EXPECT_FALSE(try_delta_of_value(K(F2, "x*(x+1)*(x+t)"), R(F2, "t")));
}

TEST(Harness, LogQ) {
  EXPECT_EQ(log_q(2, 8), 3.0);
  EXPECT_EQ(log_q(3, 1), 0.0);
  EXPECT_NEAR(log_q(2, 6), std::log2(6.0), 1e-12);
}

TEST(Harness, EmptyScan) {
  auto F2 = FieldCtx::make(2);
  const auto rep = main_bound_scan(K(F2, "x*(x+1)*(x+t)"), 0, ScanMode::exhaustive_mode(), 0);
  EXPECT_TRUE(rep.rows.empty());
  EXPECT_FALSE(rep.lambda);
}

TEST(Harness, ScanRowsMatchDirectComputation) {
  auto F2 = FieldCtx::make(2);
  const PolyOverK F = K(F2, "x*(x+1)*(x+t)");
  const auto rep = main_bound_scan(F, 4, ScanMode::exhaustive_mode(), 0, 3);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) {
    std::size_t count = 0, skipped = 0;
    std::uint32_t lo = UINT32_MAX;
    for (const auto& f : oracle::height_set(F2, row.H)) {
      const RatFunc v = evaluate(F, f);
      if (v.is_constant()) {
        ++skipped;
        continue;
      }
      ++count;
      lo = std::min(lo, oracle::delta(v));
    }
    EXPECT_EQ(row.count, count);
    EXPECT_EQ(row.skipped, skipped);
    if (count) {
      EXPECT_EQ(row.min_delta, lo);
    }
  }
  const auto serial = main_bound_scan(F, 4, ScanMode::exhaustive_mode(), 0, 1);
  EXPECT_EQ(serial.rows.size(), rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    EXPECT_EQ(serial.rows[i].min_delta, rep.rows[i].min_delta);
    EXPECT_EQ(serial.rows[i].argmin, rep.rows[i].argmin);
  }
}

TEST(Harness, ScanAcceptsFactorList) {
  auto F2 = FieldCtx::make(2);
  const auto a = main_bound_scan(K(F2, "x*(x+1)*(x+t)"), 3, ScanMode::exhaustive_mode(), 0);
  const auto b = main_bound_scan(std::vector{K(F2, "x"), K(F2, "x+1"), K(F2, "x+t")}, 3, ScanMode::exhaustive_mode(), 0);
  ASSERT_TRUE(a.lambda && b.lambda);
  EXPECT_EQ(compare_lambda(2, *a.lambda, *b.lambda), std::strong_ordering::equal);
}

TEST(Harness, SampledScanIsReproducible) {
  auto F3 = FieldCtx::make(3);
  const PolyOverK F = K(F3, "x^2-t");
  const auto a = main_bound_scan(F, 4, ScanMode::sampled(50), 7, 2);
  const auto b = main_bound_scan(F, 4, ScanMode::sampled(50), 7, 4);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].count + a.rows[i].skipped, 50u);
    EXPECT_EQ(a.rows[i].argmin, b.rows[i].argmin);
    EXPECT_EQ(a.rows[i].mean_delta, b.rows[i].mean_delta);
  }
}

TEST(Harness, CompareLambdaIsExact) {
  EXPECT_EQ(compare_lambda(2, {4, 2, 0}, {1, 0, 0}), std::strong_ordering::equal);
  EXPECT_EQ(compare_lambda(3, {5, 1, 0}, {2, 1, 0}), std::strong_ordering::greater);
  EXPECT_EQ(compare_lambda(2, {3, 1, 0}, {5, 2, 0}), std::strong_ordering::greater);
}

TEST(Harness, AbcExamples) {
  auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
  const auto a = abc_verify(RatFunc::t(F2), {FqElem::zero(F2), FqElem::one(F2)});
  EXPECT_EQ(a.lhs, 3);
  EXPECT_EQ(a.rhs, 3);
  EXPECT_EQ(a.slack(), 0);
  const auto b = abc_verify(R(F2, "t^2+t"), {FqElem::zero(F2)});
  EXPECT_EQ(b.lhs, 3);
  EXPECT_EQ(b.rhs, 2);
  EXPECT_EQ(b.slack(), 1);
  EXPECT_THROW(abc_verify(R(F3, "t^3+1"), {FqElem::zero(F3)}), PreconditionError);
  EXPECT_THROW(abc_verify(RatFunc::one(F3), {FqElem::zero(F3)}), PreconditionError);
  EXPECT_THROW(abc_verify(RatFunc::t(F3), {}), PreconditionError);
  EXPECT_THROW(abc_verify(RatFunc::t(F3), {FqElem::one(F3), FqElem::one(F3)}), PreconditionError);
}

TEST(Harness, SequenceExample) {
  auto F3 = FieldCtx::make(3);
  const PolyOverK F = K(F3, "x^2-t");
  const auto cert = ExceptionalCert::verified(F, 1, RatFunc::t(F3), RatFunc(F3));
  const auto rep = exceptional_sequence(F, cert, R(F3, "1/(t^2+1)"), 4);
  ASSERT_EQ(rep.rows.size(), 5u);
  const std::uint32_t heights[] = {2, 7, 22, 67, 202};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(rep.rows[k].height, heights[k]);
  EXPECT_EQ(rep.rows[1].f, R(F3, "1/(t^7+t)"));
  EXPECT_TRUE(rep.heights_increasing);
  EXPECT_TRUE(rep.identities_hold);
  for (std::size_t k = 2; k < 5; ++k) EXPECT_EQ(rep.rows[k].delta, rep.rows[1].delta);
  EXPECT_THROW(exceptional_sequence(F, cert, RatFunc::t(F3), 2), PreconditionError);
}

TEST(Harness, PathologyExample) {
  auto F2 = FieldCtx::make(2);
  const auto rep = pathology_run(K(F2, "x^2+x+1"), 4);
  ASSERT_EQ(rep.rows.size(), 5u);
  for (std::uint32_t k = 0; k <= 4; ++k) {
    EXPECT_EQ(rep.rows[k].height, 2u << k >> 1);
    EXPECT_EQ(rep.rows[k].delta, 2u);
    EXPECT_TRUE(rep.rows[k].identity);
  }
  EXPECT_THROW(pathology_run(K(F2, "x^2+t"), 2), PreconditionError);
}

TEST(Harness, SharpenedBoundIsExact) {
  // q = 2, m = 2, H = 4, eps = 1/2: delta = 1 satisfies 2^{2*2+1} = 32 > 4^2 = 16.
  EXPECT_TRUE(sharpened_bound_holds(2, 2, 4, 1, {1, 2}));
  // Equality is a violation: 2^{(0+1)*1+1} = 4 = (4*1*1)^1.
  EXPECT_FALSE(sharpened_bound_holds(2, 2, 4, 0, {1, 1}));
}

TEST(Harness, ExceptionalScanFiltersPthPowers) {
  auto F2 = FieldCtx::make(2);
  const PolyOverK F = K(F2, "x^2+x");
  const auto cert = ExceptionalCert::verified(F, 1, RatFunc::one(F2), RatFunc(F2));
  const auto rep = exceptional_bound_scan(F, cert, {1, 2}, 4, ScanMode::exhaustive_mode(), 0);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) {
    std::size_t squares = 0;
    for (const auto& f : oracle::height_set(F2, row.H)) squares += is_pth_power(f);
    EXPECT_EQ(row.filtered, squares);
    for (const auto& v : row.violations) EXPECT_FALSE(is_pth_power(v.f));
  }
  EXPECT_EQ(rep.total_violations, 0u);
  EXPECT_EQ(rep.clean_from, 1u);
}
