#pragma once

// Affine lines of AG(n,3), i.e. the 3APs of Z_3^n taken as unordered triples.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/group.hpp"

namespace apfree {

/// Sorted triple {a, b, c} of distinct points with a + b + c = 0.
struct Line {
  std::array<Index, 3> points{};

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;
};

class LineTable {
 public:
  static constexpr std::uint32_t max_dimension = 10;
  /// Dimensions whose point set fits one 64-bit word.
  static constexpr std::uint32_t word_dimension = 3;

  explicit LineTable(std::uint32_t n) : group_(3, check_dim(n)) {
    const auto order = static_cast<Index>(group_.order());
    detail::IndexArith ar(group_);
    const Index zero = 0;
    by_point_.resize(order);
    for (Index a = 0; a < order; ++a) {
      for (Index b = a + 1; b < order; ++b) {
        const Index c = ar.sub(ar.sub(zero, a), b);
        if (c <= b) continue;
        const auto id = static_cast<std::uint32_t>(lines_.size());
        lines_.push_back(Line{{a, b, c}});
        by_point_[a].push_back(id);
        by_point_[b].push_back(id);
        by_point_[c].push_back(id);
      }
    }
    if (n <= word_dimension) {
      masks_.reserve(lines_.size());
      for (const auto& l : lines_) masks_.push_back(bit(l.points[0]) | bit(l.points[1]) | bit(l.points[2]));
    }
  }

  std::uint32_t n() const noexcept { return group_.n(); }
  const GroupParams& group() const noexcept { return group_; }
  std::size_t num_points() const noexcept { return by_point_.size(); }
  std::size_t size() const noexcept { return lines_.size(); }

  std::span<const Line> lines() const noexcept { return lines_; }
  const Line& line(std::size_t id) const { return lines_[id]; }
  std::span<const std::uint32_t> lines_through(Index p) const { return by_point_[p]; }

  /// Per-line point masks; empty unless n <= word_dimension.
  std::span<const std::uint64_t> word_masks() const noexcept { return masks_; }

  static constexpr std::uint64_t bit(Index p) noexcept { return std::uint64_t{1} << p; }

  bool line_in(std::size_t id, const Subset& a) const {
    const auto& p = lines_[id].points;
    return a.contains(p[0]) && a.contains(p[1]) && a.contains(p[2]);
  }

  /// Line count of a subset of Z_3^n given as one word (n <= 3).
  std::size_t count_in_word(std::uint64_t set) const noexcept {
    std::size_t c = 0;
    for (auto m : masks_) c += (set & m) == m;
    return c;
  }

  /// Lines through p whose other two points lie in set (n <= 3).
  std::size_t delta_in_word(std::uint64_t set, Index p) const noexcept {
    std::size_t c = 0;
    for (auto id : by_point_[p]) {
      const auto rest = masks_[id] & ~bit(p);
      c += (set & rest) == rest;
    }
    return c;
  }

 private:
  static std::uint32_t check_dim(std::uint32_t n) {
    if (n < 1 || n > max_dimension) throw Error(ErrorCode::DimensionTooLarge, "line table supports 1 <= n <= 10");
    return n;
  }

  GroupParams group_;
  std::vector<Line> lines_;
  std::vector<std::vector<std::uint32_t>> by_point_;
  std::vector<std::uint64_t> masks_;
};

inline LineTable build_line_table(std::uint32_t n) { return LineTable(n); }

namespace detail {
inline void check_dims(const LineTable& t, const Subset& a) {
  if (!(a.params() == t.group())) throw Error(ErrorCode::InvalidArgument, "subset is not a subset of Z_3^n for this table");
}
}  // namespace detail

/// Number of lines contained in a.
inline std::size_t count_lines_in(const LineTable& t, const Subset& a) {
  detail::check_dims(t, a);
  if (!t.word_masks().empty()) return t.count_in_word(a.mask().word0());
  std::size_t c = 0;
  for (std::size_t id = 0; id < t.size(); ++id) c += t.line_in(id, a);
  return c;
}

/// count_lines_in(a + p) - count_lines_in(a), scanning only the lines through p.
inline std::size_t lines_delta(const LineTable& t, const Subset& a, Index p) {
  detail::check_dims(t, a);
  if (a.contains(p)) throw Error(ErrorCode::InvalidArgument, "lines_delta requires p outside the subset");
  std::size_t c = 0;
  for (auto id : t.lines_through(p)) {
    const auto& pts = t.line(id).points;
    bool in = true;
    for (auto q : pts)
      if (q != p) in = in && a.contains(q);
    c += in;
  }
  return c;
}

}  // namespace apfree
