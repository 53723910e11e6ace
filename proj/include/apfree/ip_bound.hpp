#pragma once

// Packing integer program: choose num_sets subset sizes j (cost m_j lines
// each) with total cost at most the number of lines, maximising total size.

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/extremal_tables.hpp"

namespace apfree {

struct PackingInstance {
  std::vector<std::size_t> cost;  // cost[j] = m_j for j = 0..S_max
  std::size_t num_sets = 0;
  std::size_t line_budget = 0;

  static PackingInstance from_table(const MinLineTable& t) {
    PackingInstance inst;
    inst.cost = t.values();
    inst.num_sets = std::size_t{1} << t.n;
    inst.line_budget = LineTable(t.n).size();
    return inst;
  }
};

struct PackingSolution {
  std::size_t objective = 0;
  std::map<std::size_t, std::size_t> counts;  // size j -> x_j, nonzero entries only
};

/// Exact optimum by DP over (sets used, budget consumed). Among optimal
/// profiles the one whose sizes, sorted decreasingly, are lexicographically
/// largest is returned.
inline PackingSolution solve_packing(const PackingInstance& inst) {
  if (inst.num_sets > (std::size_t{1} << 10)) throw Error(ErrorCode::InstanceTooLarge, "num_sets > 2^10");
  if (inst.line_budget > 1000000) throw Error(ErrorCode::InstanceTooLarge, "line_budget > 10^6");
  if (inst.cost.empty()) throw Error(ErrorCode::InfeasibleInstance, "no sizes");
  const std::size_t sets = inst.num_sets, budget = inst.line_budget;
  constexpr long none = std::numeric_limits<long>::min();
  // best[t][b]: max total size of t sets with total cost <= b.
  std::vector<std::vector<long>> best(sets + 1, std::vector<long>(budget + 1, none));
  for (std::size_t b = 0; b <= budget; ++b) best[0][b] = 0;
  for (std::size_t t = 1; t <= sets; ++t) {
    for (std::size_t b = 0; b <= budget; ++b) {
      long v = none;
      for (std::size_t j = 0; j < inst.cost.size(); ++j) {
        if (inst.cost[j] > b) continue;
        const long rest = best[t - 1][b - inst.cost[j]];
        if (rest != none) v = std::max(v, rest + static_cast<long>(j));
      }
      best[t][b] = v;
    }
  }
  if (best[sets][budget] == none) throw Error(ErrorCode::InfeasibleInstance, "no feasible size profile");

  PackingSolution sol;
  sol.objective = static_cast<std::size_t>(best[sets][budget]);
  std::size_t b = budget;
  long remaining = best[sets][budget];
  for (std::size_t t = sets; t >= 1; --t) {
    for (std::size_t j = inst.cost.size(); j-- > 0;) {
      if (inst.cost[j] > b) continue;
      const long rest = best[t - 1][b - inst.cost[j]];
      if (rest != none && rest + static_cast<long>(j) == remaining) {
        ++sol.counts[j];
        b -= inst.cost[j];
        remaining = rest;
        break;
      }
    }
  }
  return sol;
}

/// True iff the counts form a feasible profile with the stated objective.
inline bool is_feasible(const PackingInstance& inst, const PackingSolution& sol) {
  std::size_t sets = 0, cost = 0, total = 0;
  for (const auto& [j, x] : sol.counts) {
    if (j >= inst.cost.size()) return false;
    sets += x;
    cost += x * inst.cost[j];
    total += x * j;
  }
  return sets == inst.num_sets && cost <= inst.line_budget && total == sol.objective;
}

struct R6Bound {
  std::size_t bound = 0;
  PackingInstance instance;
  PackingSolution solution;
  MinLineTable table;
};

/// Upper bound on r_6(Z_6^n) from the min-line table and the packing program.
inline R6Bound upper_bound_r6(std::uint32_t n, const TableOptions& opt = {}) {
  R6Bound r;
  r.table = compute_min_line_table(n, opt);
  r.instance = PackingInstance::from_table(r.table);
  r.solution = solve_packing(r.instance);
  r.bound = r.solution.objective;
  return r;
}

}  // namespace apfree
