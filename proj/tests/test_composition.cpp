#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "compknn/composition.hpp"
#include "compknn/error.hpp"
#include "test_support.hpp"

namespace compknn {
namespace {

using testing::error_kind;

TEST(Closure, ScalesToUnitSum) {
  const std::vector<double> v{2, 2, 4};
  const Composition c = closure(v);
  EXPECT_DOUBLE_EQ(c[0], 0.25);
  EXPECT_DOUBLE_EQ(c[1], 0.25);
  EXPECT_DOUBLE_EQ(c[2], 0.5);
}

TEST(Closure, AlreadyClosedIsUnchanged) {
  const std::vector<double> v{0.25, 0.25, 0.5};
  EXPECT_EQ(closure(v), (Composition{0.25, 0.25, 0.5}));
}

TEST(Closure, Errors) {
  const std::vector<double> zeros{0, 0, 0};
  const std::vector<double> negative{0.5, -0.1, 0.6};
  EXPECT_EQ(error_kind([&] { closure(zeros); }), ErrorKind::DegenerateInput);
  EXPECT_EQ(error_kind([&] { closure(negative); }), ErrorKind::NegativeComponent);
  EXPECT_EQ(error_kind([] { Composition{1.0}; }), ErrorKind::InvalidArgument);
}

TEST(Composition, ConstructorKeepsNearlyClosedRowsAndClosesOthers) {
  const Composition near{0.5, 0.5 + 5e-10};
  EXPECT_EQ(near[1], 0.5 + 5e-10);
  const Composition percent{40.0, 60.0};
  EXPECT_DOUBLE_EQ(percent[0], 0.4);
  EXPECT_DOUBLE_EQ(percent[1], 0.6);
}

TEST(PowerTransform, IdentityAtOne) {
  const Composition x{0.2, 0.8};
  EXPECT_EQ(power_transform(x, 1.0), x);
}

TEST(PowerTransform, CollapsesToCentreAtZero) {
  const Composition u = power_transform({0.2, 0.8}, 0.0);
  EXPECT_DOUBLE_EQ(u[0], 0.5);
  EXPECT_DOUBLE_EQ(u[1], 0.5);
}

TEST(PowerTransform, ZeroAlphaSharesOverPositiveSupport) {
  const Composition u = power_transform({0.2, 0.0, 0.8}, 0.0);
  EXPECT_DOUBLE_EQ(u[0], 0.5);
  EXPECT_EQ(u[1], 0.0);
  EXPECT_DOUBLE_EQ(u[2], 0.5);
}

TEST(PowerTransform, SquareMatchesOracle) {
  // 50-digit reference: (1/17, 16/17).
  const Composition u = power_transform({0.2, 0.8}, 2.0);
  EXPECT_NEAR(u[0], 0.058823529411764705882, 1e-15);
  EXPECT_NEAR(u[1], 0.941176470588235294118, 1e-15);
}

TEST(PowerTransform, NegativeAlphaRejectsZeros) {
  EXPECT_EQ(error_kind([] { power_transform({0.5, 0.0, 0.5}, -0.5); }),
            ErrorKind::ZeroUnderNegativePower);
  const Composition u = power_transform({0.25, 0.75}, -1.0);
  EXPECT_NEAR(u[0], 0.75, 1e-15);
}

TEST(PowerTransform, ExtremeAlphaStaysFinite) {
  const Composition u = power_transform({1e-300, 1.0 - 1e-300}, -50.0);
  EXPECT_NEAR(u[0], 1.0, 1e-15);
  const Composition v = power_transform({0.3, 0.7}, 2000.0);
  EXPECT_NEAR(v[1], 1.0, 1e-15);
}

TEST(PowerTransformProperty, SumsToOneAndCommutesWithPermutation) {
  testing::CompositionGen gen(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 2 + gen.index(9);
    const Composition x = trial % 2 ? gen.positive(d) : gen.with_zeros(d, 0.3);
    const double alpha = x.strictly_positive() ? gen.uniform(-2, 2) : gen.uniform(0, 2);
    const Composition u = power_transform(x, alpha);
    EXPECT_NEAR(compensated_sum(u.parts()), 1.0, 1e-12);

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<double> permuted(d);
    for (std::size_t i = 0; i < d; ++i) permuted[i] = x[perm[i]];
    const Composition up = power_transform(Composition(permuted), alpha);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(up[i], u[perm[i]], 1e-15);

    if (alpha > 0) {
      for (std::size_t i = 0; i < d; ++i) EXPECT_EQ(u[i] == 0.0, x[i] == 0.0);
    }
  }
}

TEST(Perturb, IdentityAndClosure) {
  const Composition x{0.1, 0.2, 0.7};
  const std::vector<double> ones{1, 1, 1};
  const Composition same = perturb(x, ones);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(same[i], x[i], 1e-16);

  const std::vector<double> p{1, 2, 3};
  const Composition u = perturb(Composition::barycentre(3), p);
  EXPECT_NEAR(u[0], 1.0 / 6, 1e-15);
  EXPECT_NEAR(u[1], 2.0 / 6, 1e-15);
  EXPECT_NEAR(u[2], 3.0 / 6, 1e-15);
}

TEST(Perturb, RejectsNonPositive) {
  const std::vector<double> p{1, 0, 3};
  const std::vector<double> short_p{1, 2};
  EXPECT_EQ(error_kind([&] { perturb({0.2, 0.3, 0.5}, p); }), ErrorKind::NegativeComponent);
  EXPECT_EQ(error_kind([&] { perturb({0.2, 0.3, 0.5}, short_p); }), ErrorKind::DimensionMismatch);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(compensated_sum(v), 2.0);
}

}  // namespace
}  // namespace compknn
