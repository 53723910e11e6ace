#pragma once

// Minimum number of lines m_j contained in a j-point subset of Z_3^n, n <= 3.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/group.hpp"
#include "apfree/lines.hpp"

namespace apfree {

struct MinLineEntry {
  std::size_t size = 0;
  std::size_t min_lines = 0;
  Subset witness;
};

struct MinLineTable {
  std::uint32_t n = 0;
  std::vector<MinLineEntry> entries;  // entries[j].size == j
  bool certified = true;              // false for a partial result cut off by a time budget

  std::vector<std::size_t> values() const {
    std::vector<std::size_t> v;
    for (const auto& e : entries) v.push_back(e.min_lines);
    return v;
  }
};

class TimeBudgetExceeded : public Error {
 public:
  explicit TimeBudgetExceeded(MinLineTable partial)
      : Error(ErrorCode::TimeBudgetExceeded, "min-line search ran out of time"), partial_(std::move(partial)) {}
  const MinLineTable& partial() const noexcept { return partial_; }

 private:
  MinLineTable partial_;
};

struct TableOptions {
  std::optional<std::chrono::duration<double>> budget;
  unsigned threads = 1;
};

namespace detail {

constexpr std::size_t no_value = std::numeric_limits<std::size_t>::max();

inline MinLineTable table_from(std::uint32_t n, const std::vector<std::size_t>& best,
                               const std::vector<std::uint64_t>& wit, bool certified) {
  const GroupParams g(3, n);
  MinLineTable t{n, {}, certified};
  for (std::size_t j = 0; j < best.size(); ++j)
    t.entries.push_back({j, best[j], Subset(g, Bitset::from_word(g.order(), wit[j]))});
  return t;
}

// All 2^(3^n) subsets; n <= 2 in practice.
inline MinLineTable exhaustive_table(const LineTable& lt) {
  const auto points = static_cast<std::uint32_t>(lt.num_points());
  std::vector<std::size_t> best(points + 1, no_value);
  std::vector<std::uint64_t> wit(points + 1, 0);
  const std::uint64_t end = std::uint64_t{1} << points;
  for (std::uint64_t s = 0; s < end; ++s) {
    const auto j = static_cast<std::size_t>(std::popcount(s));
    const auto c = lt.count_in_word(s);
    if (c < best[j]) {
      best[j] = c;
      wit[j] = s;
    }
  }
  return table_from(lt.n(), best, wit, true);
}

// Depth-first search over sets containing the origin (every nonempty set has a
// translate whose smallest point is the origin, with the same line count).
// Children of a node add a point larger than its largest point, in increasing
// order. Work is split into tasks {0, p, q}; each task keeps its first
// minimiser per size, and tasks are merged in order so the result does not
// depend on the thread count.
class BranchAndBound {
 public:
  BranchAndBound(const LineTable& lt, const TableOptions& opt)
      : lt_(lt), points_(static_cast<std::uint32_t>(lt.num_points())), opt_(opt), global_(points_ + 1) {
    for (auto& g : global_) g.store(no_value, std::memory_order_relaxed);
    if (opt.budget) deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(*opt.budget);
  }

  MinLineTable run() {
    std::vector<std::size_t> best(points_ + 1, no_value);
    std::vector<std::uint64_t> wit(points_ + 1, 0);
    best[0] = 0;
    if (points_ >= 1) best[1] = 0, wit[1] = 1;
    // Sets {0, p}; never contain a line.
    if (points_ >= 2) best[2] = 0, wit[2] = 0b11;
    for (std::size_t j = 0; j <= std::min<std::size_t>(2, points_); ++j) tighten(j, best[j]);

    if (points_ <= 2) return table_from(lt_.n(), best, wit, true);

    for (Index p = 1; p < points_; ++p)
      for (Index q = p + 1; q < points_; ++q) tasks_.push_back({p, q});
    results_.resize(tasks_.size());

    const unsigned threads = std::max(1u, opt_.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back([this] { worker(); });
      for (auto& t : pool) t.join();
    }

    bool complete = !stopped_.load();
    for (const auto& r : results_) {
      if (!r.done) complete = false;
      for (std::size_t j = 3; j <= points_; ++j) {
        if (r.best.empty() || r.best[j] >= best[j]) continue;
        best[j] = r.best[j];
        wit[j] = r.wit[j];
      }
    }
    MinLineTable table = table_from(lt_.n(), best, wit, complete);
    if (!complete) throw TimeBudgetExceeded(std::move(table));
    return table;
  }

 private:
  struct Task {
    Index p, q;
  };
  struct TaskResult {
    bool done = false;
    std::vector<std::size_t> best;
    std::vector<std::uint64_t> wit;
  };

  void tighten(std::size_t j, std::size_t c) {
    auto cur = global_[j].load(std::memory_order_relaxed);
    while (c < cur && !global_[j].compare_exchange_weak(cur, c, std::memory_order_relaxed)) {
    }
  }

  void worker() {
    for (;;) {
      const std::size_t t = next_.fetch_add(1);
      if (t >= tasks_.size() || stopped_.load(std::memory_order_relaxed)) return;
      TaskResult& r = results_[t];
      r.best.assign(points_ + 1, no_value);
      r.wit.assign(points_ + 1, 0);
      const auto [p, q] = tasks_[t];
      std::uint64_t set = LineTable::bit(0) | LineTable::bit(p);
      const std::size_t count = lt_.delta_in_word(set, q);
      set |= LineTable::bit(q);
      r_ = &r;
      visit(set, 3, count, q);
      if (!stopped_.load(std::memory_order_relaxed)) r.done = true;
    }
  }

  void visit(std::uint64_t set, std::size_t size, std::size_t count, Index last) {
    if ((++nodes_ & 0xffff) == 0 && deadline_ && std::chrono::steady_clock::now() > *deadline_) stopped_.store(true);
    if (stopped_.load(std::memory_order_relaxed)) return;
    if (count <= global_[size].load(std::memory_order_relaxed)) {
      if (count < r_->best[size]) {
        r_->best[size] = count;
        r_->wit[size] = set;
      }
      tighten(size, count);
    }
    const std::size_t reach = size + (points_ - 1 - last);
    bool useful = false;
    for (std::size_t j = size + 1; j <= reach && !useful; ++j) useful = count <= global_[j].load(std::memory_order_relaxed);
    if (!useful) return;
    for (Index p = last + 1; p < points_; ++p)
      visit(set | LineTable::bit(p), size + 1, count + lt_.delta_in_word(set, p), p);
  }

  const LineTable& lt_;
  std::uint32_t points_;
  TableOptions opt_;
  std::vector<std::atomic<std::size_t>> global_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<Task> tasks_;
  std::vector<TaskResult> results_;
  std::atomic<std::size_t> next_{0};
  std::atomic<bool> stopped_{false};
  static thread_local inline TaskResult* r_ = nullptr;
  static thread_local inline std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exhaustive scan for n <= 2, branch and bound for n = 3. Throws
/// TimeBudgetExceeded (carrying a non-certified partial table) when the budget
/// runs out.
inline MinLineTable compute_min_line_table(std::uint32_t n, const TableOptions& opt = {}) {
  if (n < 1 || n > 3) throw Error(ErrorCode::DimensionTooLarge, "min-line tables are computed for n in {1,2,3}");
  const LineTable lt(n);
  if (n <= 2) return detail::exhaustive_table(lt);
  return detail::BranchAndBound(lt, opt).run();
}

/// Branch and bound at any n <= 3 (used to cross-check the exhaustive scan).
inline MinLineTable branch_and_bound_table(std::uint32_t n, const TableOptions& opt = {}) {
  if (n < 1 || n > 3) throw Error(ErrorCode::DimensionTooLarge, "min-line tables are computed for n in {1,2,3}");
  const LineTable lt(n);
  return detail::BranchAndBound(lt, opt).run();
}

struct TableCertificate {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Recounts every witness and checks sizes, boundary values and monotonicity.
/// Minimality is not re-certified here.
inline TableCertificate certify_table(const MinLineTable& t) {
  TableCertificate cert;
  auto fail = [&](const std::string& msg) {
    cert.pass = false;
    cert.failures.push_back(msg);
  };
  LineTable lt(t.n);
  const std::size_t points = lt.num_points();
  if (t.entries.size() != points + 1) fail("expected " + std::to_string(points + 1) + " entries");
  for (std::size_t j = 0; j < t.entries.size(); ++j) {
    const auto& e = t.entries[j];
    if (e.size != j) fail("WitnessMismatch at j=" + std::to_string(j) + ": entry size field");
    if (!(e.witness.params() == lt.group())) {
      fail("WitnessMismatch at j=" + std::to_string(j) + ": witness dimension");
      continue;
    }
    if (e.witness.size() != j) fail("WitnessMismatch at j=" + std::to_string(j) + ": witness has " + std::to_string(e.witness.size()) + " points");
    const auto c = count_lines_in(lt, e.witness);
    if (c != e.min_lines)
      fail("WitnessMismatch at j=" + std::to_string(j) + ": witness contains " + std::to_string(c) + " lines, table says " + std::to_string(e.min_lines));
    if (j > 0 && e.min_lines < t.entries[j - 1].min_lines) fail("MonotonicityViolation at j=" + std::to_string(j));
  }
  if (!t.entries.empty()) {
    if (t.entries.front().min_lines != 0) fail("boundary: m_0 must be 0");
    if (t.entries.size() == points + 1 && t.entries.back().min_lines != lt.size()) fail("boundary: m_max must equal the line count");
  }
  if (!t.certified) fail("table is a partial, non-certified result");
  return cert;
}

}  // namespace apfree
