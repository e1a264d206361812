#include <gtest/gtest.h>

#include <random>

#include "quasi/cover.hpp"
#include "quasi/rational.hpp"

using namespace quasi;

namespace {

struct Family {
  std::vector<ElementMask> members;
  std::vector<Rational> costs;
};

Family random_family(std::uint64_t seed, unsigned n, std::size_t k) {
  std::mt19937_64 rng(seed);
  Family f;
  const ElementMask all = (ElementMask{1} << n) - 1;
  for (std::size_t i = 0; i < k; ++i) {
    f.members.push_back(rng() & all);
    f.costs.emplace_back(static_cast<long>(rng() % 9), static_cast<long>(1 + rng() % 6));
  }
  return f;
}

}  // namespace

TEST(MinCover, EmptyTargetCostsNothing) {
  MinCoverSolver<Rational> s({0b11, 0b01}, {Rational(1), Rational(1, 2)});
  auto r = s.solve(0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 0);
  EXPECT_TRUE(r->chosen.empty());
}

TEST(MinCover, Infeasible) {
  MinCoverSolver<Rational> s({0b01}, {Rational(1)});
  EXPECT_FALSE(s.solve(0b10));
  EXPECT_FALSE(min_cover_exhaustive<Rational>(0b10, {0b01}, {Rational(1)}));
}

TEST(MinCover, RejectsBadInput) {
  EXPECT_THROW(MinCoverSolver<Rational>({0b1}, {}), std::invalid_argument);
  EXPECT_THROW(MinCoverSolver<Rational>({0b1}, {Rational(-1)}), std::invalid_argument);
  std::vector<ElementMask> many(21, 1);
  std::vector<Rational> costs(21, Rational(1));
  EXPECT_THROW(min_cover_exhaustive<Rational>(1, many, costs), std::length_error);
}

TEST(MinCover, TieBreakIsLexSmallestIrredundant) {
  // {0,1} costs 1 via [0] or via [1,2]; [0] is lexicographically first.
  MinCoverSolver<Rational> s({0b11, 0b01, 0b10}, {Rational(1), Rational(1, 2), Rational(1, 2)});
  auto r = s.solve(0b11);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 1);
  EXPECT_EQ(r->chosen, (std::vector<std::size_t>{0}));
  // A zero-cost member that adds nothing is never reported.
  MinCoverSolver<Rational> z({0, 0b1}, {Rational(0), Rational(1, 3)});
  EXPECT_EQ(z.solve(0b1)->chosen, (std::vector<std::size_t>{1}));
}

TEST(MinCover, AgreesWithExhaustiveOnRandomFamilies) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const unsigned n = 1 + seed % 7;
    auto f = random_family(seed, n, 1 + seed % 10);
    MinCoverSolver<Rational> s(f.members, f.costs);
    for (ElementMask t = 0; t < (ElementMask{1} << n); ++t) {
      auto fast = s.solve(t);
      auto slow = min_cover_exhaustive<Rational>(t, f.members, f.costs);
      ASSERT_EQ(fast.has_value(), slow.has_value()) << "seed " << seed << " target " << t;
      if (!fast) continue;
      EXPECT_EQ(fast->cost, slow->cost) << "seed " << seed << " target " << t;
      EXPECT_EQ(fast->chosen, slow->chosen) << "seed " << seed << " target " << t;
      ElementMask uni = 0;
      Rational sum = 0;
      for (std::size_t i = 0; i < fast->chosen.size(); ++i) {
        if (i) {
          EXPECT_LT(fast->chosen[i - 1], fast->chosen[i]);
        }
        uni |= f.members[fast->chosen[i]];
        sum += f.costs[fast->chosen[i]];
      }
      EXPECT_EQ(t & ~uni, 0u);
      EXPECT_EQ(sum, fast->cost);
    }
  }
}

TEST(MinCover, FloatingCostsMatchExact) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const unsigned n = 1 + seed % 6;
    auto f = random_family(seed, n, 1 + seed % 10);
    std::vector<long double> fc;
    for (const auto& c : f.costs) fc.push_back(static_cast<long double>(c));
    MinCoverSolver<Rational> exact(f.members, f.costs);
    MinCoverSolver<long double> approx(f.members, fc);
    for (ElementMask t = 0; t < (ElementMask{1} << n); ++t) {
      auto a = exact.solve(t);
      auto b = approx.solve(t);
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) {
        EXPECT_NEAR(static_cast<double>(a->cost), static_cast<double>(b->cost), 1e-12);
      }
    }
  }
}

TEST(MinCover, MemoDoesNotChangeAnswers) {
  auto f = random_family(7, 8, 14);
  MinCoverSolver<Rational> reused(f.members, f.costs);
  for (ElementMask t = 0; t < 256; ++t) {
    MinCoverSolver<Rational> fresh(f.members, f.costs);
    auto a = reused.solve(t);
    auto b = fresh.solve(t);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->cost, b->cost);
      EXPECT_EQ(a->chosen, b->chosen);
    }
  }
}
