#include "cmsim/rng.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

using cmsim::Rng;

TEST(Rng, SameSeedSameStream) {
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
}

TEST(Rng, ForkIgnoresParentState) {
    Rng a(9);
    Rng b(9);
    for (int i = 0; i < 57; ++i) b.next_u64();
    auto fa = a.fork("shuffle");
    auto fb = b.fork("shuffle");
    EXPECT_EQ(fa.next_u64(), fb.next_u64());
}

TEST(Rng, ForkNamesGiveDistinctStreams) {
    Rng root(9);
    EXPECT_NE(root.fork("ga").next_u64(), root.fork("mutation").next_u64());
    EXPECT_NE(root.fork("ga").seed(), root.seed());
}

TEST(Rng, Uniform01Range) {
    Rng rng(1);
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    EXPECT_LT(lo, 1e-3);
    EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(Rng, UniformIntCoversClosedRange) {
    Rng rng(2);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 100000; ++i) {
        const int v = rng.uniform_int(1, 10);
        ASSERT_GE(v, 1);
        ASSERT_LE(v, 10);
        ++counts[static_cast<std::size_t>(v - 1)];
    }
    for (const int c : counts) {
        EXPECT_NEAR(c, 10000, 500);
    }
}

TEST(Rng, NormalMoments) {
    Rng rng(4);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, ShuffleIsPermutation) {
    Rng rng(5);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    auto w = v;
    rng.shuffle(std::span(w));
    EXPECT_NE(v, w);
    std::sort(w.begin(), w.end());
    EXPECT_EQ(v, w);
}
