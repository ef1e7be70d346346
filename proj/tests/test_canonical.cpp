#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mgs/canonical.hpp"
#include "oracle.hpp"

using mgs::IceQuiver;

namespace {

std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(Canonical, SingleArrow) {
  auto a = canonical_form(IceQuiver(2, 0, {{1, 2, 1}}));
  auto b = canonical_form(IceQuiver(2, 0, {{2, 1, 1}}));
  EXPECT_EQ(a.quiver, b.quiver);
  EXPECT_EQ(oracle::permute(IceQuiver(2, 0, {{1, 2, 1}}), a.relabel), a.quiver);
}

TEST(Canonical, CycleIsNotPath) {
  auto c = canonical_form(IceQuiver(3, 0, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}}));
  auto p = canonical_form(IceQuiver(3, 0, {{1, 2, 1}, {2, 3, 1}}));
  EXPECT_NE(c.quiver, p.quiver);
}

TEST(Canonical, InvariantUnderRandomRelabeling) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    bool with_frame = trial % 3 == 0;
    IceQuiver x = oracle::random_quiver(rng, n, with_frame ? n : 0, 2, 0.35);
    auto cx = canonical_form(x);
    ASSERT_EQ(oracle::permute(x, cx.relabel), cx.quiver);
    IceQuiver y = oracle::permute(x, random_perm(rng, n));
    ASSERT_EQ(canonical_form(y).quiver, cx.quiver);
  }
}

TEST(Canonical, HighlySymmetricQuiversStayFast) {
  IceQuiver empty(10, 0, {});
  EXPECT_EQ(canonical_form(empty).quiver, empty);
  std::vector<mgs::Arrow> star;
  for (int i = 2; i <= 10; ++i) star.push_back({1, i, 1});
  auto c = canonical_form(IceQuiver(10, 0, star));
  EXPECT_EQ(c.quiver.arrows().size(), 9u);
}

// Equal canonical forms exactly when an exhaustive permutation search finds an isomorphism.
TEST(Canonical, MatchesBruteForceIsomorphism) {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 6; ++n) {
    std::vector<IceQuiver> pool;
    for (int i = 0; i < 12; ++i) {
      IceQuiver x = oracle::random_quiver(rng, n, 0, 1, 0.4);
      pool.push_back(x);
      pool.push_back(oracle::permute(x, random_perm(rng, n)));
    }
    std::vector<IceQuiver> canon;
    for (const auto& x : pool) canon.push_back(canonical_form(x).quiver);
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        ASSERT_EQ(canon[i] == canon[j], oracle::isomorphic(pool[i], pool[j]));
  }
}
