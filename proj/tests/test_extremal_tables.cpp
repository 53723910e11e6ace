#include <gtest/gtest.h>

#include <bit>
#include <chrono>
#include <cstdint>
#include <vector>

#include "apfree/extremal_tables.hpp"
#include "apfree/lines.hpp"
#include "oracles.hpp"

using namespace apfree;

namespace {

// Visits every subset of the 3^n points in Gray-code order, keeping the line
// count up to date from the two partner points of each line through the
// flipped point.
std::vector<std::size_t> gray_code_minima(std::uint32_t n) {
  std::uint32_t order = 1;
  for (std::uint32_t i = 0; i < n; ++i) order *= 3;
  const auto lines = oracle::ap_sets(3, n, 3);
  const GroupParams g(3, n);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> partners(order);
  for (const auto& l : lines) {
    std::vector<std::uint32_t> idx;
    for (const auto& p : l) idx.push_back(g.encode(Element{p}));
    partners[idx[0]].push_back({idx[1], idx[2]});
    partners[idx[1]].push_back({idx[0], idx[2]});
    partners[idx[2]].push_back({idx[0], idx[1]});
  }
  std::vector<std::size_t> best(order + 1, SIZE_MAX);
  best[0] = 0;
  std::uint64_t set = 0;
  std::size_t count = 0, size = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << order); ++step) {
    const auto p = static_cast<std::uint32_t>(std::countr_zero(step));
    std::size_t through = 0;
    for (auto [a, b] : partners[p]) through += ((set >> a) & (set >> b) & 1u);
    if ((set >> p) & 1u) {
      set &= ~(std::uint64_t{1} << p);
      count -= through;
      --size;
    } else {
      set |= std::uint64_t{1} << p;
      count += through;
      ++size;
    }
    if (count < best[size]) best[size] = count;
  }
  return best;
}

const std::vector<std::size_t> dim2_values{0, 0, 0, 0, 0, 1, 2, 5, 8, 12};
const std::vector<std::size_t> dim3_values{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 3, 4, 7,
                                           10, 13, 16, 20, 24, 33, 42, 51, 60, 70, 80, 92, 104, 117};

}  // namespace

TEST(MinLineTable, Dim1) {
  const auto t = compute_min_line_table(1);
  EXPECT_EQ(t.values(), (std::vector<std::size_t>{0, 0, 0, 1}));
  EXPECT_TRUE(certify_table(t).pass);
}

TEST(MinLineTable, Dim2MatchesGrayCodeScan) {
  const auto t = compute_min_line_table(2);
  EXPECT_EQ(t.values(), gray_code_minima(2));
  EXPECT_EQ(t.values(), dim2_values);
  EXPECT_TRUE(t.certified);
  EXPECT_TRUE(certify_table(t).pass);
}

TEST(MinLineTable, BranchAndBoundAgreesWithExhaustive) {
  for (std::uint32_t n : {1u, 2u}) {
    const auto a = compute_min_line_table(n);
    const auto b = branch_and_bound_table(n);
    EXPECT_EQ(a.values(), b.values()) << n;
    EXPECT_TRUE(certify_table(b).pass);
  }
}

TEST(MinLineTable, Dim3MatchesGrayCodeScan) {
  const auto oracle = gray_code_minima(3);
  const auto t = compute_min_line_table(3, TableOptions{std::nullopt, 4});
  EXPECT_EQ(t.values(), oracle);
  EXPECT_EQ(t.values(), dim3_values);
  const auto cert = certify_table(t);
  EXPECT_TRUE(cert.pass);
  for (const auto& f : cert.failures) ADD_FAILURE() << f;
}

TEST(MinLineTable, DeterministicAcrossThreadCounts) {
  const auto a = compute_min_line_table(3, TableOptions{std::nullopt, 1});
  const auto b = compute_min_line_table(3, TableOptions{std::nullopt, 3});
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t j = 0; j < a.entries.size(); ++j) {
    EXPECT_EQ(a.entries[j].min_lines, b.entries[j].min_lines);
    EXPECT_EQ(a.entries[j].witness, b.entries[j].witness) << j;
  }
}

TEST(MinLineTable, TimeBudgetReturnsPartial) {
  try {
    compute_min_line_table(3, TableOptions{std::chrono::duration<double>(1e-6), 1});
    FAIL() << "expected TimeBudgetExceeded";
  } catch (const TimeBudgetExceeded& e) {
    EXPECT_EQ(e.code(), ErrorCode::TimeBudgetExceeded);
    EXPECT_FALSE(e.partial().certified);
    EXPECT_FALSE(certify_table(e.partial()).pass);
  }
}

TEST(MinLineTable, RejectsDimension) {
  EXPECT_THROW(compute_min_line_table(4), Error);
  EXPECT_THROW(compute_min_line_table(0), Error);
}

TEST(CertifyTable, DetectsTampering) {
  auto t = compute_min_line_table(2);
  auto bumped = t;
  bumped.entries[7].min_lines = 4;
  auto cert = certify_table(bumped);
  EXPECT_FALSE(cert.pass);
  ASSERT_FALSE(cert.failures.empty());
  EXPECT_EQ(cert.failures[0].rfind("WitnessMismatch at j=7", 0), 0u);

  auto swapped = t;
  std::swap(swapped.entries[6], swapped.entries[7]);
  swapped.entries[6].size = 6;
  swapped.entries[7].size = 7;
  cert = certify_table(swapped);
  EXPECT_FALSE(cert.pass);
  bool mono = false;
  for (const auto& f : cert.failures) mono |= f.rfind("MonotonicityViolation at j=", 0) == 0;
  EXPECT_TRUE(mono);
}
