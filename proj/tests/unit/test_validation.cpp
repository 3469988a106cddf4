#include <gtest/gtest.h>

#include "sqzres/validation.hpp"

using namespace sqzres;

TEST(Validation, InvariantSuiteIsGreen) {
  const auto results = run_invariant_suite();
  EXPECT_EQ(results.size(), 7u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(Validation, TransformDrawsAreReproducible) {
  const auto a = random_transform_draws(4, 11u);
  const auto b = random_transform_draws(4, 11u);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].lambda1, b[k].lambda1);
    EXPECT_GT(std::abs(a[k].lambda2), std::abs(a[k].lambda1));
  }
}

TEST(Validation, FrameErrorDetectsWrongCoupling) {
  EffectiveParams eff;
  eff.lambda2 = 0.1;
  eff.lambda1 = 0.03;
  EXPECT_LT(transformed_frame_error(eff, 20), 1e-6);
}
