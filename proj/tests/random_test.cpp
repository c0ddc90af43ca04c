#include <map>
#include <set>

#include <gtest/gtest.h>

#include "tsloc/random.hpp"

namespace tsloc {
namespace {

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, DifferentSeedsDiffer) {
  RandomStream a(42);
  RandomStream b(43);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a.next_u64() == b.next_u64();
  EXPECT_EQ(equal, 0);
}

// Frozen first outputs: changing any of these means datasets generated by an
// older build will no longer be reproduced, which requires bumping
// kGeneratorCatalogVersion.
TEST(RandomStream, FrozenSequence) {
  RandomStream rng(0);
  const std::uint64_t first = rng.next_u64();
  const std::uint64_t second = rng.next_u64();
  RandomStream again(0);
  EXPECT_EQ(again.next_u64(), first);
  EXPECT_EQ(again.next_u64(), second);
  EXPECT_EQ(first, 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(second, 0xbf6e1f784956452aULL);
}

TEST(RandomStream, UniformInUnitInterval) {
  RandomStream rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, UniformIntCoversRangeEvenly) {
  RandomStream rng(11);
  std::map<std::uint64_t, int> counts;
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_int(3, 9)];
  ASSERT_EQ(counts.size(), 7u);
  EXPECT_EQ(counts.begin()->first, 3u);
  EXPECT_EQ(counts.rbegin()->first, 9u);
  for (const auto& [v, c] : counts) {
    EXPECT_NEAR(c, n / 7, 400) << "value " << v;
  }
}

TEST(RandomStream, UniformIntSingletonConsumesNothing) {
  RandomStream a(5);
  RandomStream b(5);
  EXPECT_EQ(a.uniform_int(4, 4), 4u);
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, SplitIsDeterministicAndDoesNotAdvance) {
  RandomStream base(9);
  RandomStream untouched(9);
  auto s1 = base.split(1);
  auto s1b = base.split(1);
  auto s2 = base.split(2);
  EXPECT_EQ(base.next_u64(), untouched.next_u64());
  const auto v = s1.next_u64();
  EXPECT_EQ(v, s1b.next_u64());
  EXPECT_NE(v, s2.next_u64());
}

}  // namespace
}  // namespace tsloc
