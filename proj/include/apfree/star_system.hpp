#pragma once

// Subsets of Z_6^n as labelled systems of subsets of Z_3^n, via the split
// Z_6 = {0,2,4} + {0,3}, and the four system properties (*)_3 .. (*)_6 that
// characterise k-AP-freeness for k = 3..6.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/group.hpp"
#include "apfree/lines.hpp"

namespace apfree {

/// Family of subsets of Z_3^n indexed by labels 0..size()-1. Systems coming
/// from Z_6^n have 2^n labels; the label bit for coordinate i is bit n-1-i.
struct SubsetSystem {
  std::uint32_t n = 0;
  std::vector<Subset> sets;

  SubsetSystem() = default;
  SubsetSystem(std::uint32_t dim, std::size_t num_sets) : n(dim), sets(num_sets, Subset(GroupParams(3, dim))) {}

  std::size_t num_sets() const noexcept { return sets.size(); }
  GroupParams base() const { return GroupParams(3, n); }

  std::size_t total_size() const {
    std::size_t t = 0;
    for (const auto& s : sets) t += s.size();
    return t;
  }

  friend bool operator==(const SubsetSystem& a, const SubsetSystem& b) { return a.n == b.n && a.sets == b.sets; }
};

namespace detail {

// Z_6 residue -> (Z_3 part, label bit); 0=0+0, 1=4+3, 2=2+0, 3=0+3, 4=4+0, 5=2+3,
// with the F part f in {0,2,4} read as f/2.
constexpr std::array<std::uint32_t, 6> z3_part{0, 2, 1, 0, 2, 1};
constexpr std::array<std::uint32_t, 6> label_bit{0, 1, 0, 1, 0, 1};

inline std::uint32_t lift(std::uint32_t x, std::uint32_t bit) { return (2 * x + 3 * bit) % 6; }

inline void check_system(const SubsetSystem& s) {
  const GroupParams base(3, s.n);
  for (const auto& a : s.sets)
    if (!(a.params() == base)) throw Error(ErrorCode::InvalidArgument, "system member has wrong dimension");
}

}  // namespace detail

inline SubsetSystem decompose(const Subset& a) {
  const GroupParams& g = a.params();
  if (g.m() != 6) throw Error(ErrorCode::WrongModulus, "decompose expects a subset of Z_6^n");
  const std::uint32_t n = g.n();
  if (n > 20) throw Error(ErrorCode::InstanceTooLarge, "too many labels");
  SubsetSystem sys(n, std::size_t{1} << n);
  const GroupParams base(3, n);
  for (auto idx : a.indices()) {
    const Element e = g.decode(idx);
    Element f{std::vector<std::uint32_t>(n)};
    std::size_t label = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      f.coords[i] = detail::z3_part[e.coords[i]];
      label = (label << 1) | detail::label_bit[e.coords[i]];
    }
    sys.sets[label].insert(base.encode(f));
  }
  return sys;
}

inline Element lift_point(std::uint32_t n, const Element& f, std::size_t label) {
  Element e{std::vector<std::uint32_t>(n)};
  for (std::uint32_t i = 0; i < n; ++i) e.coords[i] = detail::lift(f.coords[i], (label >> (n - 1 - i)) & 1u);
  return e;
}

inline Subset recompose(const SubsetSystem& s) {
  detail::check_system(s);
  if (s.num_sets() != (std::size_t{1} << s.n))
    throw Error(ErrorCode::InvalidArgument, "recompose needs exactly 2^n member sets");
  const GroupParams g(6, s.n);
  const GroupParams base = s.base();
  Subset out(g);
  for (std::size_t label = 0; label < s.num_sets(); ++label)
    for (auto idx : s.sets[label].indices()) out.insert(g.encode(lift_point(s.n, base.decode(idx), label)));
  return out;
}

/// A replayable violation of (*)_k: points a, b, c of one line in the roles
/// used by the property, and the two labels involved.
struct StarWitness {
  std::uint32_t property = 0;
  std::size_t label1 = 0;  // r'
  std::size_t label2 = 0;  // r''
  std::size_t line_id = 0;
  Line line;
  Index a = 0, b = 0, c = 0;
};

namespace detail {

constexpr std::array<std::array<int, 3>, 6> orderings{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

inline bool violates(std::uint32_t k, const Subset& s1, const Subset& s2, Index a, Index b, Index c) {
  switch (k) {
    case 3: return s1.contains(a) && s1.contains(c) && s2.contains(b);
    case 4: return s1.contains(a) && s1.contains(b) && s2.contains(a) && s2.contains(c);
    case 5: return s1.contains(a) && s1.contains(b) && s1.contains(c) && s2.contains(a) && s2.contains(b);
    case 6: return s1.contains(a) && s1.contains(b) && s1.contains(c) && s2.contains(a) && s2.contains(b) && s2.contains(c);
  }
  return false;
}

}  // namespace detail

/// Replays a witness against a system.
inline bool confirms(const SubsetSystem& s, const StarWitness& w) {
  if (w.label1 >= s.num_sets() || w.label2 >= s.num_sets()) return false;
  if (w.property != 3 && w.label1 == w.label2) return false;
  return detail::violates(w.property, s.sets[w.label1], s.sets[w.label2], w.a, w.b, w.c);
}

/// First violation of (*)_k in (line id, r', r'', ordering) order, or nothing
/// if the system has the property. (*)_3 ranges over all ordered label pairs
/// including r' = r''; (*)_4 and (*)_5 over ordered distinct pairs; (*)_6 over
/// unordered distinct pairs.
inline std::optional<StarWitness> check_star(const SubsetSystem& s, std::uint32_t k, const LineTable& table) {
  if (k < 3 || k > 6) throw Error(ErrorCode::InvalidArgument, "property index must be 3..6");
  detail::check_system(s);
  if (table.n() != s.n) throw Error(ErrorCode::InvalidArgument, "line table dimension mismatch");
  const std::size_t labels = s.num_sets();
  for (std::size_t id = 0; id < table.size(); ++id) {
    const Line& line = table.line(id);
    for (std::size_t r1 = 0; r1 < labels; ++r1) {
      for (std::size_t r2 = (k == 6 ? r1 + 1 : 0); r2 < labels; ++r2) {
        if (k != 3 && r1 == r2) continue;
        for (const auto& ord : detail::orderings) {
          const Index a = line.points[ord[0]], b = line.points[ord[1]], c = line.points[ord[2]];
          if (detail::violates(k, s.sets[r1], s.sets[r2], a, b, c)) return StarWitness{k, r1, r2, id, line, a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<StarWitness> check_star(const SubsetSystem& s, std::uint32_t k) {
  return check_star(s, k, LineTable(s.n));
}

/// The k-AP of Z_6^n encoded by a witness, in canonical form.
inline Progression witness_progression(const SubsetSystem& s, const StarWitness& w) {
  if (s.num_sets() != (std::size_t{1} << s.n)) throw Error(ErrorCode::InvalidArgument, "system is not over Z_2^n labels");
  const GroupParams base = s.base();
  const GroupParams g(6, s.n);
  std::vector<std::pair<Index, std::size_t>> seq;  // (Z_3 point, label)
  switch (w.property) {
    case 3: seq = {{w.a, w.label1}, {w.b, w.label2}, {w.c, w.label1}}; break;
    case 4: seq = {{w.a, w.label1}, {w.c, w.label2}, {w.b, w.label1}, {w.a, w.label2}}; break;
    case 5: seq = {{w.a, w.label1}, {w.b, w.label2}, {w.c, w.label1}, {w.a, w.label2}, {w.b, w.label1}}; break;
    case 6:
      seq = {{w.a, w.label1}, {w.b, w.label2}, {w.c, w.label1}, {w.a, w.label2}, {w.b, w.label1}, {w.c, w.label2}};
      break;
    default: throw Error(ErrorCode::InvalidArgument, "bad witness property");
  }
  Progression p;
  p.length = w.property;
  for (const auto& [pt, label] : seq) p.terms.push_back(lift_point(s.n, base.decode(pt), label));
  p.start = p.terms[0];
  p.step = g.sub(p.terms[1], p.terms[0]);
  return canonical_form(g, p);
}

/// Checks that direct k-AP detection and (*)_k agree on a. Guarded to n <= 3.
inline bool verify_equivalence(const Subset& a, std::uint32_t k) {
  if (a.params().m() != 6) throw Error(ErrorCode::WrongModulus, "verify_equivalence expects Z_6^n");
  if (a.params().order() > 216) throw Error(ErrorCode::InstanceTooLarge, "verify_equivalence requires 6^n <= 216");
  const bool direct_free = !contains_k_ap(a, k).has_value();
  const bool star_free = !check_star(decompose(a), k).has_value();
  return direct_free == star_free;
}

}  // namespace apfree
