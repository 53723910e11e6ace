#include <gtest/gtest.h>

#include "apfree/constructions.hpp"
#include "apfree/heuristic_search.hpp"
#include "apfree/ip_bound.hpp"
#include "oracles.hpp"

using namespace apfree;

namespace {

SearchConfig config(std::uint32_t n, std::uint64_t seed, std::uint64_t iters) {
  SearchConfig c;
  c.n = n;
  c.num_sets = std::size_t{1} << n;
  c.rng_seed = seed;
  c.max_iterations = iters;
  return c;
}

}  // namespace

TEST(Search, Dim2ReachesTheBound) {
  std::size_t best = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = config(2, seed, 1000000);
    c.target = 25;
    const auto r = search_star6(c);
    EXPECT_FALSE(check_star(r.best, 6));
    EXPECT_EQ(r.best.total_size(), r.total);
    EXPECT_LE(r.total, 25u);
    best = std::max(best, r.total);
  }
  EXPECT_EQ(best, 25u);
}

TEST(Search, ResultsAreSixApFree) {
  const auto r = search_star6(config(2, 3, 20000));
  EXPECT_FALSE(oracle::has_k_ap(oracle::to_points(recompose(r.best)), 6, 6));
}

TEST(Search, Dim3StaysBelowThePackingBound) {
  auto c = config(3, 1, 300000);
  c.restarts = 2;
  c.threads = 2;
  const auto r = search_star6(c);
  EXPECT_FALSE(check_star(r.best, 6));
  EXPECT_LE(r.total, 124u);
  EXPECT_GE(r.total, 100u);
}

TEST(Search, DeterministicForFixedSeed) {
  auto c = config(3, 42, 50000);
  c.restarts = 3;
  const auto a = search_star6(c);
  c.threads = 3;
  const auto b = search_star6(c);
  EXPECT_EQ(a.total, b.total);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.best_restart, b.best_restart);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].restart, b.trace[i].restart);
    EXPECT_EQ(a.trace[i].iteration, b.trace[i].iteration);
    EXPECT_EQ(a.trace[i].total, b.trace[i].total);
  }
}

TEST(Search, TraceMatchesMoves) {
  const auto r = search_star6(config(2, 9, 5000));
  ASSERT_FALSE(r.trace.empty());
  std::size_t peak = 0;
  for (const auto& t : r.trace) {
    EXPECT_LE(t.total, 25u);
    peak = std::max(peak, t.total);
  }
  EXPECT_EQ(peak, r.total);
}

TEST(Search, StartsFromAGivenSystem) {
  auto c = config(3, 3, 1000);
  c.initial = load_dim3_116();
  const auto r = search_star6(c);
  EXPECT_GE(r.total, 116u);
  EXPECT_FALSE(check_star(r.best, 6));
}

TEST(Search, RepairsAnInvalidStart) {
  auto c = config(2, 0, 0);
  SubsetSystem bad(2, 4);
  for (auto& s : bad.sets) s = Subset::full(GroupParams(3, 2));
  c.initial = bad;
  const auto r = search_star6(c);
  EXPECT_FALSE(check_star(r.best, 6));
  bool repaired = false;
  for (const auto& t : r.trace) repaired |= t.move == MoveType::Repair;
  EXPECT_TRUE(repaired);
}

TEST(Search, RejectsBadConfigs) {
  EXPECT_THROW(search_star6(config(4, 0, 10)), Error);
  auto c = config(2, 0, 10);
  c.initial = SubsetSystem(3, 8);
  EXPECT_THROW(search_star6(c), Error);
  c = config(2, 0, 10);
  c.restarts = 0;
  EXPECT_THROW(search_star6(c), Error);
}
