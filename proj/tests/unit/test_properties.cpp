#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fracshape/properties.hpp"

using namespace fracshape;

TEST(Properties, FrozenConstantsAreListed) {
  EXPECT_FALSE(kFrozenConstants.empty());
  for (const auto& c : kFrozenConstants) {
    EXPECT_GT(c.value, 0.0) << c.name;
    EXPECT_EQ(frozen_constant(c.name), c.value);
  }
  EXPECT_THROW((void)frozen_constant("no such constant"), std::out_of_range);
}

TEST(Properties, SmallSweepsPassAndAreDeterministic) {
  PropertyOptions opts;
  opts.samples = 100;
  std::mt19937_64 a(42), b(42);
  const auto ka = kernel_property_sweeps(a, opts), kb = kernel_property_sweeps(b, opts);
  const auto ga = green_property_sweeps(a, opts), gb = green_property_sweeps(b, opts);
  ASSERT_EQ(ka.size(), kb.size());
  for (std::size_t i = 0; i < ka.size(); ++i) {
    EXPECT_TRUE(ka[i].passed()) << ka[i].name;
    EXPECT_EQ(ka[i].worst_ratio, kb[i].worst_ratio);
    EXPECT_EQ(ka[i].samples, 100u);
  }
  for (std::size_t i = 0; i < ga.size(); ++i) {
    EXPECT_TRUE(ga[i].passed()) << ga[i].name;
    EXPECT_EQ(ga[i].worst_ratio, gb[i].worst_ratio);
  }
}
