#pragma once

// Simulated annealing for large systems with (*)_6: no line of AG(n,3) may be
// contained in two member sets.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/lines.hpp"
#include "apfree/star_system.hpp"

namespace apfree {

struct SearchConfig {
  std::uint32_t n = 2;
  std::size_t num_sets = 4;
  std::uint64_t max_iterations = 100000;  // per restart
  std::size_t restarts = 1;
  std::uint64_t rng_seed = 0;
  std::optional<SubsetSystem> initial;
  double initial_temperature = 2.0;
  double cooling = 0.999;          // geometric, per iteration
  double removal_rate = 0.01;      // probability of proposing a plain removal
  std::optional<std::size_t> target;  // stop a restart once reached
  unsigned threads = 1;
};

enum class MoveType { Add, Swap, Remove, Repair };

inline const char* to_string(MoveType m) {
  switch (m) {
    case MoveType::Add: return "add";
    case MoveType::Swap: return "swap";
    case MoveType::Remove: return "remove";
    case MoveType::Repair: return "repair";
  }
  return "?";
}

struct TraceRecord {
  std::size_t restart = 0;
  std::uint64_t iteration = 0;
  std::size_t total = 0;
  MoveType move = MoveType::Add;
};

struct SearchResult {
  SubsetSystem best;
  std::size_t total = 0;
  std::size_t best_restart = 0;
  std::vector<TraceRecord> trace;
};

namespace detail {

class Annealer {
 public:
  Annealer(const LineTable& lt, const SearchConfig& cfg, std::size_t restart)
      : lt_(lt), cfg_(cfg), restart_(restart), sets_(cfg.num_sets, 0), held_(lt.size(), 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    rng_.seed(seq);
  }

  SearchResult run() {
    if (cfg_.initial) load(*cfg_.initial);
    best_ = sets_;
    best_total_ = total_;
    double temp = cfg_.initial_temperature;
    const auto points = static_cast<Index>(lt_.num_points());
    std::uniform_int_distribution<std::size_t> pick_set(0, cfg_.num_sets - 1);
    std::uniform_int_distribution<Index> pick_point(0, points - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::uint64_t it = 0; it < cfg_.max_iterations; ++it) {
      if (cfg_.target && best_total_ >= *cfg_.target) break;
      const std::size_t s = pick_set(rng_);
      const Index p = pick_point(rng_);
      journal_.clear();
      long delta = 0;
      MoveType move;
      if (contains(s, p)) {
        if (unit(rng_) >= cfg_.removal_rate) {
          temp *= cfg_.cooling;
          continue;
        }
        remove(s, p);
        delta = -1;
        move = MoveType::Remove;
      } else {
        add(s, p);
        delta = 1;
        move = MoveType::Add;
        for (;;) {
          const auto conflict = find_conflict(p, s);
          if (!conflict) break;
          const auto [line_id, other] = *conflict;
          // Drop a point of the doubly held line from one of its two holders.
          const bool from_self = unit(rng_) < 0.5;
          const std::size_t holder = from_self ? s : other;
          Index q;
          do {
            q = lt_.line(line_id).points[std::uniform_int_distribution<int>(0, 2)(rng_)];
          } while (holder == s && q == p);
          remove(holder, q);
          --delta;
          move = MoveType::Swap;
        }
      }
      const bool accept = delta >= 0 || unit(rng_) < std::exp(static_cast<double>(delta) / std::max(temp, 1e-300));
      if (!accept) {
        undo();
      } else if (delta != 0) {
        trace_.push_back({restart_, it, total_, move});
        if (total_ > best_total_) {
          best_total_ = total_;
          best_ = sets_;
        }
      }
      temp *= cfg_.cooling;
    }

    SearchResult r;
    r.best = SubsetSystem(cfg_.n, cfg_.num_sets);
    const GroupParams g(3, cfg_.n);
    for (std::size_t i = 0; i < cfg_.num_sets; ++i) r.best.sets[i] = Subset(g, Bitset::from_word(g.order(), best_[i]));
    r.total = best_total_;
    r.best_restart = restart_;
    r.trace = std::move(trace_);
    return r;
  }

 private:
  struct Change {
    std::size_t set;
    Index point;
    bool added;
  };

  bool contains(std::size_t s, Index p) const { return (sets_[s] >> p) & 1u; }

  void add(std::size_t s, Index p) {
    for (auto id : lt_.lines_through(p)) {
      const auto rest = lt_.word_masks()[id] & ~LineTable::bit(p);
      if ((sets_[s] & rest) == rest) ++held_[id];
    }
    sets_[s] |= LineTable::bit(p);
    ++total_;
    journal_.push_back({s, p, true});
  }

  void remove(std::size_t s, Index p) {
    for (auto id : lt_.lines_through(p)) {
      const auto m = lt_.word_masks()[id];
      if ((sets_[s] & m) == m) --held_[id];
    }
    sets_[s] &= ~LineTable::bit(p);
    --total_;
    journal_.push_back({s, p, false});
  }

  void undo() {
    auto changes = std::move(journal_);
    for (auto it = changes.rbegin(); it != changes.rend(); ++it) {
      if (it->added) remove(it->set, it->point);
      else add(it->set, it->point);
    }
    journal_.clear();
  }

  // A line held twice, one holder being s, if any. Lines through p are
  // checked first; removals elsewhere never create new conflicts.
  std::optional<std::pair<std::size_t, std::size_t>> find_conflict(Index p, std::size_t s) const {
    for (auto id : lt_.lines_through(p)) {
      if (held_[id] < 2) continue;
      const auto m = lt_.word_masks()[id];
      for (std::size_t o = 0; o < sets_.size(); ++o)
        if (o != s && (sets_[o] & m) == m) return std::pair{static_cast<std::size_t>(id), o};
    }
    return std::nullopt;
  }

  void load(const SubsetSystem& init) {
    if (init.n != cfg_.n || init.num_sets() != cfg_.num_sets)
      throw Error(ErrorCode::InvalidArgument, "initial system does not match the search shape");
    for (std::size_t i = 0; i < init.num_sets(); ++i)
      for (auto p : init.sets[i].indices()) add(i, p);
    // Repair: drop the largest point of any doubly held line from its later holder.
    for (std::size_t id = 0; id < lt_.size(); ++id) {
      while (held_[id] >= 2) {
        const auto m = lt_.word_masks()[id];
        for (std::size_t o = sets_.size(); o-- > 0;) {
          if ((sets_[o] & m) == m) {
            remove(o, lt_.line(id).points[2]);
            trace_.push_back({restart_, 0, total_, MoveType::Repair});
            break;
          }
        }
      }
    }
    journal_.clear();
  }

  const LineTable& lt_;
  const SearchConfig& cfg_;
  std::size_t restart_;
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> sets_;
  std::vector<std::uint32_t> held_;  // number of member sets containing each line
  std::size_t total_ = 0;
  std::vector<std::uint64_t> best_;
  std::size_t best_total_ = 0;
  std::vector<Change> journal_;
  std::vector<TraceRecord> trace_;
};

}  // namespace detail

/// Best system found over all restarts; always satisfies (*)_6. Ties between
/// restarts go to the lower restart index, and the trace lists restarts in order.
inline SearchResult search_star6(const SearchConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 3) throw Error(ErrorCode::DimensionTooLarge, "search supports n <= 3");
  if (cfg.num_sets < 1) throw Error(ErrorCode::InvalidArgument, "num_sets must be >= 1");
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  const LineTable lt(cfg.n);
  std::vector<SearchResult> results(cfg.restarts);
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.restarts)));
  if (threads == 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) results[r] = detail::Annealer(lt, cfg, r).run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < cfg.restarts; r += threads) results[r] = detail::Annealer(lt, cfg, r).run();
      });
    for (auto& th : pool) th.join();
  }
  SearchResult out;
  bool first = true;
  for (auto& r : results) {
    if (first || r.total > out.total) {
      out.best = r.best;
      out.total = r.total;
      out.best_restart = r.best_restart;
      first = false;
    }
    out.trace.insert(out.trace.end(), r.trace.begin(), r.trace.end());
  }
  if (check_star(out.best, 6, lt)) throw Error(ErrorCode::InvalidArgument, "internal: search produced an invalid system");
  return out;
}

}  // namespace apfree
