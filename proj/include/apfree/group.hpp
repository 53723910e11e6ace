#pragma once

// Arithmetic of Z_m^n, k-term arithmetic progressions with distinct terms,
// and an exact maximum AP-free set solver for tiny groups.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "apfree/bitset.hpp"
#include "apfree/error.hpp"

namespace apfree {

using Index = std::uint32_t;

/// A point of Z_m^n as a residue vector.
struct Element {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Z_m^n. Points are addressed by index = sum_i coords[i] * m^(n-1-i), so
/// index order coincides with lexicographic order of coordinate vectors.
class GroupParams {
 public:
  static constexpr std::uint64_t max_order = std::uint64_t{1} << 32;

  GroupParams(std::uint32_t m, std::uint32_t n) : m_(m), n_(n) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 2");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      order *= m;
      if (order > max_order) throw Error(ErrorCode::InstanceTooLarge, "m^n exceeds 2^32");
    }
    order_ = order;
  }

  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint64_t order() const noexcept { return order_; }

  Index encode(const Element& e) const {
    if (e.coords.size() != n_) throw Error(ErrorCode::InvalidArgument, "element has wrong dimension");
    std::uint64_t idx = 0;
    for (auto c : e.coords) {
      if (c >= m_) throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
      idx = idx * m_ + c;
    }
    return static_cast<Index>(idx);
  }

  Element decode(std::uint64_t idx) const {
    Element e{std::vector<std::uint32_t>(n_)};
    for (std::uint32_t i = n_; i-- > 0;) {
      e.coords[i] = static_cast<std::uint32_t>(idx % m_);
      idx /= m_;
    }
    return e;
  }

  Element zero() const { return Element{std::vector<std::uint32_t>(n_, 0)}; }

  Element add(const Element& a, const Element& b) const {
    Element r = a;
    for (std::uint32_t i = 0; i < n_; ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % m_;
    return r;
  }

  Element sub(const Element& a, const Element& b) const {
    Element r = a;
    for (std::uint32_t i = 0; i < n_; ++i) r.coords[i] = (a.coords[i] + m_ - b.coords[i]) % m_;
    return r;
  }

  Element neg(const Element& a) const { return sub(zero(), a); }

  Element scale(std::uint64_t t, const Element& a) const {
    Element r = a;
    for (std::uint32_t i = 0; i < n_; ++i)
      r.coords[i] = static_cast<std::uint32_t>((t % m_) * a.coords[i] % m_);
    return r;
  }

  friend bool operator==(const GroupParams& a, const GroupParams& b) noexcept {
    return a.m_ == b.m_ && a.n_ == b.n_;
  }

 private:
  std::uint32_t m_;
  std::uint32_t n_;
  std::uint64_t order_ = 1;
};

/// A subset of Z_m^n as a bitmask over point indices.
class Subset {
 public:
  explicit Subset(GroupParams params) : params_(params), mask_(params.order()) {}
  Subset(GroupParams params, Bitset mask) : params_(params), mask_(std::move(mask)) {
    if (mask_.size() != params_.order()) throw Error(ErrorCode::InvalidArgument, "mask size != m^n");
  }

  static Subset full(GroupParams params) { return Subset(params, Bitset::full(params.order())); }

  template <class Range>
  static Subset from_indices(GroupParams params, const Range& indices) {
    Subset s(params);
    for (auto i : indices) s.insert(static_cast<Index>(i));
    return s;
  }

  static Subset from_elements(GroupParams params, const std::vector<Element>& points) {
    Subset s(params);
    for (const auto& p : points) s.insert(params.encode(p));
    return s;
  }

  const GroupParams& params() const noexcept { return params_; }
  const Bitset& mask() const noexcept { return mask_; }

  bool contains(Index i) const noexcept { return mask_.test(i); }
  bool contains(const Element& e) const { return mask_.test(params_.encode(e)); }
  void insert(Index i) { mask_.set(i); }
  void erase(Index i) { mask_.reset(i); }
  std::size_t size() const noexcept { return mask_.count(); }
  bool empty() const noexcept { return mask_.none(); }

  std::vector<Index> indices() const {
    std::vector<Index> out;
    for (auto i : mask_.ones()) out.push_back(static_cast<Index>(i));
    return out;
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (auto i : mask_.ones()) out.push_back(params_.decode(i));
    return out;
  }

  bool is_subset_of(const Subset& other) const { return mask_.is_subset_of(other.mask_); }

  friend bool operator==(const Subset& a, const Subset& b) { return a.params_ == b.params_ && a.mask_ == b.mask_; }

 private:
  GroupParams params_;
  Bitset mask_;
};

/// start, start + step, ..., start + (k-1) step.
struct Progression {
  Element start;
  Element step;
  std::uint32_t length = 0;
  std::vector<Element> terms;
};

inline std::vector<Element> ap_terms(const GroupParams& g, const Element& start, const Element& step,
                                     std::uint32_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<Element> out;
  out.reserve(k);
  Element cur = start;
  for (std::uint32_t t = 0; t < k; ++t) {
    out.push_back(cur);
    cur = g.add(cur, step);
  }
  return out;
}

namespace detail {

// Index-level helpers used by the enumerators.
struct IndexArith {
  explicit IndexArith(const GroupParams& g) : g_(g) {}

  Index add(Index a, Index b) const {
    std::uint64_t out = 0, place = 1;
    const std::uint32_t m = g_.m();
    for (std::uint32_t i = 0; i < g_.n(); ++i) {
      out += ((a % m + b % m) % m) * place;
      a /= m;
      b /= m;
      place *= m;
    }
    return static_cast<Index>(out);
  }

  Index sub(Index a, Index b) const {
    std::uint64_t out = 0, place = 1;
    const std::uint32_t m = g_.m();
    for (std::uint32_t i = 0; i < g_.n(); ++i) {
      out += ((a % m + m - b % m) % m) * place;
      a /= m;
      b /= m;
      place *= m;
    }
    return static_cast<Index>(out);
  }

  const GroupParams& g_;
};

// Fills terms with start + t*step; returns false if two terms coincide.
inline bool distinct_terms(const IndexArith& ar, Index start, Index step, std::uint32_t k, std::vector<Index>& terms) {
  terms.resize(k);
  terms[0] = start;
  for (std::uint32_t t = 1; t < k; ++t) {
    terms[t] = ar.add(terms[t - 1], step);
    for (std::uint32_t s = 0; s < t; ++s)
      if (terms[s] == terms[t]) return false;
  }
  return true;
}

// True iff the generator (s, d) produces exactly the set sorted.
inline bool generates(const IndexArith& ar, Index s, Index d, const std::vector<Index>& sorted) {
  Index cur = s;
  for (std::size_t t = 1; t < sorted.size(); ++t) {
    cur = ar.add(cur, d);
    if (cur == s || !std::binary_search(sorted.begin(), sorted.end(), cur)) return false;
  }
  return true;
}

// Least (start, step) pair generating the term set, compared lexicographically.
inline std::pair<Index, Index> least_generator(const IndexArith& ar, const std::vector<Index>& sorted) {
  for (Index s : sorted) {
    bool found = false;
    Index best = 0;
    for (Index u : sorted) {
      if (u == s) continue;
      const Index d = ar.sub(u, s);
      if ((!found || d < best) && generates(ar, s, d, sorted)) {
        best = d;
        found = true;
      }
    }
    if (found) return {s, best};
  }
  throw Error(ErrorCode::InvalidArgument, "not a progression with distinct terms");
}

// True iff (start, step) is the least generator of its term set. terms must be
// the distinct terms of (start, step).
inline bool is_canonical(const IndexArith& ar, Index start, Index step, const std::vector<Index>& terms) {
  std::vector<Index> sorted = terms;
  std::sort(sorted.begin(), sorted.end());
  return least_generator(ar, sorted) == std::pair{start, step};
}

inline Progression make_progression(const GroupParams& g, Index start, Index step, const std::vector<Index>& terms) {
  Progression p{g.decode(start), g.decode(step), static_cast<std::uint32_t>(terms.size()), {}};
  for (auto t : terms) p.terms.push_back(g.decode(t));
  return p;
}

}  // namespace detail

/// Visits every k-AP with pairwise distinct terms exactly once, identified by
/// its term set and represented by its least (start, step) generator. Visit
/// order is increasing (start, step). The visitor returns false to stop early.
/// Arguments passed are (start index, step index, term indices).
inline void for_each_k_ap_index(const GroupParams& g, std::uint32_t k,
                                const std::function<bool(Index, Index, const std::vector<Index>&)>& visit) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "k must be >= 3");
  if (k > g.order()) return;
  detail::IndexArith ar(g);
  std::vector<Index> terms;
  const auto order = g.order();
  for (std::uint64_t s = 0; s < order; ++s) {
    for (std::uint64_t d = 1; d < order; ++d) {
      const auto start = static_cast<Index>(s), step = static_cast<Index>(d);
      if (!detail::distinct_terms(ar, start, step, k, terms)) continue;
      if (!detail::is_canonical(ar, start, step, terms)) continue;
      if (!visit(start, step, terms)) return;
    }
  }
}

inline std::vector<Progression> enumerate_k_aps(const GroupParams& g, std::uint32_t k) {
  std::vector<Progression> out;
  for_each_k_ap_index(g, k, [&](Index s, Index d, const std::vector<Index>& terms) {
    out.push_back(detail::make_progression(g, s, d, terms));
    return true;
  });
  return out;
}

/// First k-AP (in canonical enumeration order) with all terms in a.
inline std::optional<Progression> contains_k_ap(const Subset& a, std::uint32_t k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "k must be >= 3");
  const GroupParams& g = a.params();
  if (k > g.order() || a.size() < k) return std::nullopt;
  detail::IndexArith ar(g);
  std::vector<Index> terms(k);
  const auto members = a.indices();
  for (Index start : members) {
    for (std::uint64_t d = 1; d < g.order(); ++d) {
      const auto step = static_cast<Index>(d);
      terms[0] = start;
      bool ok = true;
      for (std::uint32_t t = 1; t < k && ok; ++t) {
        terms[t] = ar.add(terms[t - 1], step);
        ok = a.contains(terms[t]);
        for (std::uint32_t s = 0; s < t && ok; ++s) ok = terms[s] != terms[t];
      }
      // The least generator of a set inside a is visited before any other,
      // so the first hit is canonical.
      if (ok) return detail::make_progression(g, start, step, terms);
    }
  }
  return std::nullopt;
}

/// Rewrites p to its least (start, step) generator. p must have distinct terms.
inline Progression canonical_form(const GroupParams& g, const Progression& p) {
  detail::IndexArith ar(g);
  std::vector<Index> sorted;
  for (const auto& t : p.terms) sorted.push_back(g.encode(t));
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidArgument, "not a progression with distinct terms");
  const auto [start, step] = detail::least_generator(ar, sorted);
  std::vector<Index> terms;
  detail::distinct_terms(ar, start, step, p.length, terms);
  return detail::make_progression(g, start, step, terms);
}

struct MaxApFreeResult {
  std::size_t size = 0;
  Subset witness;
};

/// Largest k-AP-free subset of Z_m^n by exact branch and bound. Guarded to m^n <= 40.
inline MaxApFreeResult max_ap_free(const GroupParams& g, std::uint32_t k) {
  constexpr std::uint64_t guard = 40;
  if (g.order() > guard) throw Error(ErrorCode::InstanceTooLarge, "max_ap_free requires m^n <= 40");
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "k must be >= 3");
  using Mask = std::uint64_t;
  const auto order = static_cast<std::uint32_t>(g.order());

  std::vector<std::vector<Mask>> through(order);  // per point: APs through it, minus the point
  for_each_k_ap_index(g, k, [&](Index, Index, const std::vector<Index>& terms) {
    Mask m = 0;
    for (auto t : terms) m |= Mask{1} << t;
    for (auto t : terms) through[t].push_back(m & ~(Mask{1} << t));
    return true;
  });

  auto addable = [&](Mask chosen, std::uint32_t p) {
    for (Mask rest : through[p])
      if ((rest & chosen) == rest) return false;
    return true;
  };

  // Greedy incumbent in increasing index order.
  Mask best_mask = 0;
  for (std::uint32_t p = 0; p < order; ++p)
    if (addable(best_mask, p)) best_mask |= Mask{1} << p;
  std::size_t best = static_cast<std::size_t>(std::popcount(best_mask));

  std::function<void(std::uint32_t, Mask, std::size_t)> dfs = [&](std::uint32_t from, Mask chosen, std::size_t size) {
    if (size > best) {
      best = size;
      best_mask = chosen;
    }
    std::vector<std::uint32_t> open;
    for (std::uint32_t p = from; p < order; ++p)
      if (addable(chosen, p)) open.push_back(p);
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (size + (open.size() - i) <= best) return;
      dfs(open[i] + 1, chosen | (Mask{1} << open[i]), size + 1);
    }
  };
  dfs(0, 0, 0);

  Subset w(g, Bitset::from_word(order, best_mask));
  return {best, std::move(w)};
}

}  // namespace apfree
