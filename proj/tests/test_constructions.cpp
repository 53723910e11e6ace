#include <gtest/gtest.h>

#include <set>

#include "apfree/constructions.hpp"
#include "apfree/lines.hpp"
#include "oracles.hpp"

using namespace apfree;

namespace {

std::vector<Element> plane() {
  std::vector<Element> out;
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t y = 0; y < 3; ++y) out.push_back(Element{{x, y}});
  return out;
}

}  // namespace

TEST(Directions, ClassifiesAllNonzeroVectors) {
  const GroupParams g(3, 2);
  std::vector<int> hits(4, 0);
  for (const auto& d : plane()) {
    if (d == g.zero()) {
      EXPECT_THROW(direction_of(d), Error);
      continue;
    }
    const auto i = direction_of(d);
    EXPECT_EQ(direction_of(g.neg(d)), i);
    ++hits[i];
  }
  EXPECT_EQ(hits, (std::vector<int>{2, 2, 2, 2}));
}

TEST(Dim2Extremal, AllPairs) {
  const GroupParams g(3, 2);
  const LineTable lt(2);
  const auto pts = plane();
  int pairs = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++pairs;
      const Element& u = pts[i];
      const Element& v = pts[j];
      const auto sys = build_dim2_extremal({u, v});
      ASSERT_EQ(sys.num_sets(), 4u);
      EXPECT_EQ(sys.total_size(), 25u);
      EXPECT_EQ(sys.sets[0].size(), 7u);
      EXPECT_FALSE(check_star(sys, 6));
      const Subset a = recompose(sys);
      EXPECT_EQ(a.size(), 25u);
      EXPECT_FALSE(oracle::has_k_ap(oracle::to_points(a), 6, 6));

      const std::size_t alpha = direction_of(g.sub(v, u));
      const Element w = g.neg(g.add(u, v));
      EXPECT_EQ(ap_terms(g, u, g.sub(v, u), 3)[2], w);
      EXPECT_FALSE(sys.sets[0].contains(u));
      EXPECT_FALSE(sys.sets[0].contains(v));
      EXPECT_TRUE(sys.sets[0].contains(w));
      std::set<std::size_t> used;
      for (std::size_t s = 1; s < 4; ++s) {
        EXPECT_EQ(sys.sets[s].size(), 6u);
        EXPECT_TRUE(sys.sets[s].contains(u));
        EXPECT_TRUE(sys.sets[s].contains(v));
        EXPECT_FALSE(sys.sets[s].contains(w));
        std::set<std::size_t> dirs;
        std::size_t inside = 0;
        for (std::size_t id = 0; id < lt.size(); ++id) {
          if (!lt.line_in(id, sys.sets[s])) continue;
          ++inside;
          const auto& l = lt.line(id).points;
          dirs.insert(direction_of(g.sub(g.decode(l[1]), g.decode(l[0]))));
        }
        EXPECT_EQ(inside, 2u);
        ASSERT_EQ(dirs.size(), 1u);
        EXPECT_NE(*dirs.begin(), alpha);
        EXPECT_TRUE(used.insert(*dirs.begin()).second);
      }
      // Swapping u and v gives the same system.
      EXPECT_EQ(build_dim2_extremal({v, u}), sys);
    }
  EXPECT_EQ(pairs, 36);
}

TEST(Dim2Extremal, RejectsEqualPoints) {
  try {
    build_dim2_extremal({Element{{1, 1}}, Element{{1, 1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSpec);
  }
}

TEST(Dim2Extremal, Record) {
  const auto r = dim2_extremal_record({Element{{0, 0}}, Element{{1, 2}}});
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.claimed_size, 25u);
}

TEST(Dim3Construction, SizeAndProperty) {
  const auto sys = load_dim3_116();
  EXPECT_EQ(sys.num_sets(), 8u);
  EXPECT_EQ(sys.total_size(), 116u);
  EXPECT_FALSE(check_star(sys, 6));
  const Subset a = recompose(sys);
  EXPECT_EQ(a.size(), 116u);
  EXPECT_FALSE(oracle::has_k_ap(oracle::to_points(a), 6, 6));
  EXPECT_TRUE(dim3_116_record().verified());
}

TEST(Dim3Construction, CorruptionIsDetected) {
  auto sys = load_dim3_116();
  auto small = sys;
  small.sets[0].erase(small.sets[0].indices().front());
  try {
    check_dim3_116(small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmbeddedDataCorrupt);
  }
  // Moving a point between panels keeps the size but should break (*)_6 for
  // some choice; every single-point move that does is rejected.
  bool rejected = false;
  for (std::size_t s = 0; s < 8 && !rejected; ++s)
    for (Index p = 0; p < 27 && !rejected; ++p) {
      if (sys.sets[s].contains(p)) continue;
      auto moved = sys;
      moved.sets[s].insert(p);
      moved.sets[(s + 1) % 8].erase(moved.sets[(s + 1) % 8].indices().front());
      if (check_star(moved, 6)) {
        EXPECT_THROW(check_dim3_116(moved), Error);
        rejected = true;
      }
    }
  EXPECT_TRUE(rejected);
}

TEST(Product, Counterexample) {
  const Subset a = five_of_six();
  EXPECT_FALSE(contains_k_ap(a, 6));
  const Subset sq = product(a, a);
  EXPECT_EQ(sq.size(), 25u);
  EXPECT_TRUE(oracle::has_k_ap(oracle::to_points(sq), 6, 6));
  const auto r = product_counterexample_record();
  EXPECT_TRUE(r.verified());
  ASSERT_TRUE(r.progression);
  EXPECT_EQ(r.progression->terms, product_counterexample_terms());
}

TEST(Product, Layout) {
  const GroupParams g1(4, 1);
  const Subset a = Subset::from_indices(g1, std::vector<Index>{1, 3});
  const Subset b = Subset::from_indices(g1, std::vector<Index>{0, 2});
  const Subset ab = product(a, b);
  std::set<oracle::Point> got;
  for (const auto& e : ab.elements()) got.insert(e.coords);
  EXPECT_EQ(got, (std::set<oracle::Point>{{1, 0}, {1, 2}, {3, 0}, {3, 2}}));
  try {
    product(a, Subset(GroupParams(5, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModulusMismatch);
  }
}

TEST(ConstantSystem, RepeatsTheSet) {
  const auto cap = max_ap_free(GroupParams(3, 2), 3).witness;
  const auto sys = build_constant_system(cap);
  EXPECT_EQ(sys.num_sets(), 4u);
  for (const auto& s : sys.sets) EXPECT_EQ(s, cap);
  EXPECT_EQ(sys.total_size(), 16u);
  EXPECT_FALSE(contains_k_ap(recompose(sys), 6));
  EXPECT_THROW(build_constant_system(Subset(GroupParams(6, 1))), Error);
}
