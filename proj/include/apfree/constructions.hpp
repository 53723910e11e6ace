#pragma once

// Explicit constructions: the extremal 25-point system for Z_6^2, the
// 116-point system for Z_6^3, direct products and the constant system.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/group.hpp"
#include "apfree/lines.hpp"
#include "apfree/star_system.hpp"

namespace apfree {

/// The four directions of AG(2,3) as step vectors.
inline const std::array<Element, 4>& plane_directions() {
  static const std::array<Element, 4> dirs{Element{{1, 0}}, Element{{0, 1}}, Element{{1, 1}}, Element{{1, 2}}};
  return dirs;
}

/// Index into plane_directions() of the direction of a nonzero vector of Z_3^2.
inline std::size_t direction_of(const Element& d) {
  const GroupParams g(3, 2);
  if (d == g.zero()) throw Error(ErrorCode::DegenerateSpec, "zero vector has no direction");
  const std::uint32_t lead = d.coords[0] ? d.coords[0] : d.coords[1];
  const Element unit = g.scale(lead == 2 ? 2 : 1, d);
  const auto& dirs = plane_directions();
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (dirs[i] == unit) return i;
  throw Error(ErrorCode::DegenerateSpec, "unreachable direction");
}

inline std::vector<Index> affine_line(const GroupParams& g, const Element& through, const Element& dir) {
  std::vector<Index> out;
  for (const auto& e : ap_terms(g, through, dir, 3)) out.push_back(g.encode(e));
  return out;
}

struct Dim2ExtremalSpec {
  Element u;
  Element v;
};

/// A_1 = Z_3^2 minus {u, v}; for each direction other than that of v - u, the
/// union of the two lines of that direction through u and through v.
inline SubsetSystem build_dim2_extremal(const Dim2ExtremalSpec& spec) {
  const GroupParams g(3, 2);
  const Index ui = g.encode(spec.u), vi = g.encode(spec.v);
  if (ui == vi) throw Error(ErrorCode::DegenerateSpec, "u and v must differ");
  const std::size_t alpha = direction_of(g.sub(spec.v, spec.u));
  SubsetSystem sys(2, 4);
  sys.sets[0] = Subset::full(g);
  sys.sets[0].erase(ui);
  sys.sets[0].erase(vi);
  std::size_t label = 1;
  for (std::size_t d = 0; d < plane_directions().size(); ++d) {
    if (d == alpha) continue;
    for (const Element* p : {&spec.u, &spec.v})
      for (auto idx : affine_line(g, *p, plane_directions()[d])) sys.sets[label].insert(idx);
    ++label;
  }
  return sys;
}

/// Coordinate concatenation A x B.
inline Subset product(const Subset& a, const Subset& b) {
  if (a.params().m() != b.params().m()) throw Error(ErrorCode::ModulusMismatch, "product needs equal moduli");
  const std::uint32_t m = a.params().m();
  const GroupParams g(m, a.params().n() + b.params().n());
  const std::uint64_t scale = b.params().order();
  Subset out(g);
  for (auto x : a.indices())
    for (auto y : b.indices()) out.insert(static_cast<Index>(std::uint64_t{x} * scale + y));
  return out;
}

/// Every one of the 2^n labels carries a0.
inline SubsetSystem build_constant_system(const Subset& a0) {
  if (a0.params().m() != 3) throw Error(ErrorCode::WrongModulus, "constant system takes a subset of Z_3^n");
  SubsetSystem sys;
  sys.n = a0.params().n();
  sys.sets.assign(std::size_t{1} << sys.n, a0);
  return sys;
}

/// Reads panels of 3x3x3 grids: rows[3*z + y][x] == 'o' marks point (x, y, z).
inline SubsetSystem system_from_grids(const std::vector<std::array<std::string_view, 9>>& panels) {
  const GroupParams g(3, 3);
  SubsetSystem sys(3, panels.size());
  for (std::size_t s = 0; s < panels.size(); ++s)
    for (std::uint32_t z = 0; z < 3; ++z)
      for (std::uint32_t y = 0; y < 3; ++y)
        for (std::uint32_t x = 0; x < 3; ++x)
          if (panels[s][3 * z + y].at(x) == 'o') sys.sets[s].insert(g.encode(Element{{x, y, z}}));
  return sys;
}

namespace detail {

// Eight panels A_1..A_8; within a panel the blocks run z = 0,1,2 and each
// block lists rows y = 0,1,2 with columns x = 0,1,2.
inline const std::vector<std::array<std::string_view, 9>>& dim3_116_grids() {
  static const std::vector<std::array<std::string_view, 9>> g{
      {"   ", "ooo", "ooo", "o  ", " o ", "ooo", "   ", "oo ", " oo"},
      {"oo ", "o o", " oo", " oo", " o ", "  o", "o  ", " oo", "oo "},
      {"o o", " o ", "oo ", "  o", "o o", "oo ", "o o", " oo", "o  "},
      {" oo", "oo ", "   ", "oo ", "o o", " oo", "o o", "o  ", "oo "},
      {"o  ", "   ", "   ", "ooo", "ooo", "o  ", "ooo", "ooo", "   "},
      {" o ", " oo", " o ", " oo", " oo", " oo", " oo", "  o", "  o"},
      {" oo", "o o", " o ", "o  ", "o  ", " oo", "oo ", " oo", "  o"},
      {"o o", "o  ", "o o", " o ", " oo", "   ", " o ", "oo ", "ooo"},
  };
  return g;
}

}  // namespace detail

inline constexpr std::size_t dim3_116_size = 116;

/// Throws EmbeddedDataCorrupt unless sys has total size 116 and (*)_6.
inline void check_dim3_116(const SubsetSystem& sys) {
  if (sys.n != 3 || sys.num_sets() != 8) throw Error(ErrorCode::EmbeddedDataCorrupt, "expected eight subsets of Z_3^3");
  if (sys.total_size() != dim3_116_size)
    throw Error(ErrorCode::EmbeddedDataCorrupt, "total size " + std::to_string(sys.total_size()) + " != 116");
  if (check_star(sys, 6)) throw Error(ErrorCode::EmbeddedDataCorrupt, "system violates (*)_6");
}

inline SubsetSystem load_dim3_116() {
  SubsetSystem sys = system_from_grids(detail::dim3_116_grids());
  check_dim3_116(sys);
  return sys;
}

/// The 6AP listed for {0,...,4}^2 in Z_6^2.
inline std::vector<Element> product_counterexample_terms() {
  return {Element{{0, 0}}, Element{{2, 3}}, Element{{4, 0}}, Element{{0, 3}}, Element{{2, 0}}, Element{{4, 3}}};
}

inline Subset five_of_six() { return Subset::from_indices(GroupParams(6, 1), std::vector<Index>{0, 1, 2, 3, 4}); }

struct Claim {
  std::string description;
  bool verified = false;
};

struct ConstructionRecord {
  std::string name;
  std::uint32_t modulus = 0;
  std::uint32_t dimension = 0;
  std::variant<SubsetSystem, Subset> payload;
  std::size_t claimed_size = 0;
  std::vector<Claim> claims;
  std::optional<Progression> progression;  // witness for "contains" claims

  bool verified() const {
    for (const auto& c : claims)
      if (!c.verified) return false;
    return true;
  }
};

namespace detail {

inline ConstructionRecord system_record(std::string name, SubsetSystem sys, std::size_t claimed_size) {
  ConstructionRecord r{std::move(name), 6, sys.n, sys, claimed_size, {}, std::nullopt};
  r.claims.push_back({"total size is " + std::to_string(claimed_size), sys.total_size() == claimed_size});
  r.claims.push_back({"system satisfies (*)_6", !check_star(sys, 6).has_value()});
  r.claims.push_back({"recomposed subset of Z_6^" + std::to_string(sys.n) + " is 6AP-free",
                      !contains_k_ap(recompose(sys), 6).has_value()});
  return r;
}

}  // namespace detail

inline ConstructionRecord dim2_extremal_record(const Dim2ExtremalSpec& spec) {
  return detail::system_record("dim2-extremal", build_dim2_extremal(spec), 25);
}

inline ConstructionRecord dim3_116_record(const SubsetSystem& sys) {
  return detail::system_record("dim3-116", sys, dim3_116_size);
}

inline ConstructionRecord dim3_116_record() { return dim3_116_record(load_dim3_116()); }

inline ConstructionRecord product_counterexample_record() {
  const Subset a = five_of_six();
  const Subset sq = product(a, a);
  ConstructionRecord r{"product-counterexample", 6, 2, sq, 25, {}, std::nullopt};
  r.claims.push_back({"{0,...,4} is 6AP-free in Z_6", !contains_k_ap(a, 6).has_value()});
  r.claims.push_back({"product has 25 elements", sq.size() == 25});
  const auto ap = contains_k_ap(sq, 6);
  r.claims.push_back({"product contains a 6AP", ap.has_value()});
  bool matches = false;
  if (ap) {
    const GroupParams g(6, 2);
    const Progression listed{product_counterexample_terms()[0], Element{{2, 3}}, 6, product_counterexample_terms()};
    const Progression canon = canonical_form(g, listed);
    matches = canon.start == ap->start && canon.step == ap->step && ap->terms == product_counterexample_terms();
  }
  r.claims.push_back({"first 6AP is (0,0),(2,3),(4,0),(0,3),(2,0),(4,3)", matches});
  r.progression = ap;
  return r;
}

}  // namespace apfree
