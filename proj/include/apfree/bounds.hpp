#pragma once

// Numeric constants and bound functions for r_3(Z_p^n) and r_6(Z_6^n).

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "apfree/error.hpp"
#include "apfree/constructions.hpp"
#include "apfree/group.hpp"
#include "apfree/star_system.hpp"

namespace apfree {

/// Named intermediate value in a bound derivation.
struct Quantity {
  std::string name;
  double value = 0.0;
};

struct Verdict {
  std::string statement;
  bool holds = false;
};

struct BoundReport {
  std::string name;
  std::vector<Quantity> inputs;
  double value = 0.0;
  std::vector<Quantity> trail;
  std::vector<Verdict> verdicts;

  double get(const std::string& key) const {
    for (const auto& q : trail)
      if (q.name == key) return q.value;
    for (const auto& q : inputs)
      if (q.name == key) return q.value;
    throw Error(ErrorCode::InvalidArgument, "no quantity named " + key);
  }

  bool all_hold() const {
    for (const auto& v : verdicts)
      if (!v.holds) return false;
    return true;
  }
};

struct MinimizeResult {
  double argmin = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimum of f on [lo, hi] until the bracket is
/// narrower than tol.
template <class Real = double>
MinimizeResult golden_section_minimize(const std::function<Real(Real)>& f, Real lo, Real hi, Real tol = 1e-12,
                                       int max_iter = 500) {
  const Real inv_phi = (std::sqrt(Real(5)) - 1) / 2;
  Real a = lo, b = hi;
  Real c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  Real fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  if (b - a > tol) throw Error(ErrorCode::ConvergenceFailure, "golden-section bracket did not shrink below tolerance");
  const Real x = (a + b) / 2;
  return {static_cast<double>(x), static_cast<double>(f(x)), it};
}

/// (1 - t^p) / ((1 - t) t^((p-1)/3)) / p, the function minimised in J(p).
/// Evaluated in long double so comparisons near the flat minimum stay resolved.
inline long double j_objective(unsigned p, long double t) {
  return (1.0L - std::pow(t, static_cast<int>(p))) / ((1.0L - t) * std::pow(t, (p - 1) / 3.0L)) / p;
}

struct JResult {
  double value = 0.0;
  double argmin = 0.0;
};

/// J(p) = (1/p) min over 0<t<1 of (1 - t^p) / ((1 - t) t^((p-1)/3)).
inline JResult compute_J(unsigned p) {
  if (p < 3 || p % 2 == 0) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
  for (unsigned d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
  // Grid pre-scan: confirm a single interior local minimum and bracket it.
  constexpr int grid = 1000;
  std::vector<long double> v(grid + 1);
  for (int i = 1; i < grid; ++i) v[i] = j_objective(p, static_cast<long double>(i) / grid);
  int best = 1, minima = 0;
  for (int i = 1; i < grid; ++i) {
    if (v[i] < v[best]) best = i;
    const bool left = i == 1 || v[i] <= v[i - 1];
    const bool right = i == grid - 1 || v[i] <= v[i + 1];
    minima += left && right;
  }
  if (minima != 1 || best == 1 || best == grid - 1)
    throw Error(ErrorCode::ConvergenceFailure, "objective is not unimodal on the sampling grid");
  const std::function<long double(long double)> f = [p](long double t) { return j_objective(p, t); };
  const auto r = golden_section_minimize<long double>(f, static_cast<long double>(best - 1) / grid,
                                                      static_cast<long double>(best + 1) / grid);
  // The neighbours a little way off must not be lower.
  constexpr long double probe = 1e-6L;
  const long double at = f(r.argmin);
  if (f(r.argmin - probe) < at || f(r.argmin + probe) < at)
    throw Error(ErrorCode::ConvergenceFailure, "located point is not a local minimum");
  return {r.value, r.argmin};
}

/// Stationary point of the p = 3 objective, the positive root of 4t^2 + t - 2.
inline double j3_closed_form_argmin() { return (-1.0 + std::sqrt(33.0)) / 8.0; }

struct SupersatConstants {
  double alpha = 0.0;  // 3 J(3)
  double C = 0.0;      // 1 + log 3 / log(3 / alpha)
  double beta = 0.0;   // 3 / 2^(1/C)
};

inline SupersatConstants supersat_constants() {
  SupersatConstants s;
  s.alpha = 3.0 * compute_J(3).value;
  s.C = 1.0 + std::log(3.0) / std::log(3.0 / s.alpha);
  s.beta = 3.0 / std::pow(2.0, 1.0 / s.C);
  return s;
}

/// Relative error of beta^C against 3^C / 2, computed in logs.
inline double supersat_identity_error(const SupersatConstants& s) {
  const double lhs = s.C * std::log(s.beta);
  const double rhs = s.C * std::log(3.0) - std::log(2.0);
  return std::abs(std::expm1(lhs - rhs));
}

inline constexpr double thm2_base = 5.709;
inline constexpr double thm2_prefactor = 3.001;
inline constexpr double shell_tail_limit = 2.001;

/// Smallest n0 with prefactor * (2 beta)^n <= 5.709^n for every n >= n0.
inline std::uint64_t thm2_threshold(double two_beta) {
  if (two_beta >= thm2_base) throw Error(ErrorCode::InvalidArgument, "2 beta must be below 5.709");
  const double ratio_log = std::log(thm2_base) - std::log(two_beta);
  auto ok = [&](double n) { return std::log(thm2_prefactor) <= n * ratio_log; };
  auto n0 = static_cast<std::uint64_t>(std::ceil(std::log(thm2_prefactor) / ratio_log));
  while (n0 > 1 && ok(static_cast<double>(n0 - 1))) --n0;
  while (!ok(static_cast<double>(n0))) ++n0;
  return n0;
}

inline BoundReport thm2_upper_bound(std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto s = supersat_constants();
  const double two_beta = 2.0 * s.beta;
  const double tail = 2.0 / (1.0 - std::pow(2.0, -(s.C - 1.0)));
  const auto n0 = thm2_threshold(two_beta);
  const double nd = static_cast<double>(n);
  BoundReport r;
  r.name = "thm2";
  r.inputs = {{"n", nd}};
  r.value = thm2_prefactor * std::pow(two_beta, nd);
  r.trail = {{"alpha", s.alpha},
             {"C", s.C},
             {"beta", s.beta},
             {"two_beta", two_beta},
             {"shell_tail", tail},
             {"log10_bound", std::log10(thm2_prefactor) + nd * std::log10(two_beta)},
             {"n0", static_cast<double>(n0)},
             {"below_5.709_power", n >= n0 ? 1.0 : 0.0}};
  r.verdicts = {{"sum_i 2^(1-(C-1)i) <= 2.001", tail <= shell_tail_limit},
                {"2 beta < 5.709", two_beta < thm2_base},
                {"3.001 (2 beta)^n <= 5.709^n for all n >= n0 (n0 minimal)",
                 std::log(thm2_prefactor) <= static_cast<double>(n0) * (std::log(thm2_base) - std::log(two_beta)) &&
                     (n0 == 1 || std::log(thm2_prefactor) > static_cast<double>(n0 - 1) * (std::log(thm2_base) - std::log(two_beta)))},
                {"n >= n0 implies 3.001 (2 beta)^n <= 5.709^n at this n",
                 n < n0 || std::log(thm2_prefactor) + nd * std::log(two_beta) <= nd * std::log(thm2_base)}};
  return r;
}

/// 2^(n+1) sqrt(3^n r3).
inline double thm3_bound(double n, double r3) {
  if (r3 < 1.0) throw Error(ErrorCode::InvalidArgument, "r3 must be >= 1");
  return std::pow(2.0, n + 1.0) * std::sqrt(std::pow(3.0, n) * r3);
}

/// Per-dimension base of the bound when r3 = b^n: 2 sqrt(3 b).
inline double thm3_base(double r3_base) { return 2.0 * std::sqrt(3.0 * r3_base); }

/// r3 base at which 2 sqrt(3 b) equals 2 beta.
inline double thm3_crossover(double beta) { return beta * beta / 3.0; }

inline BoundReport thm3_report(std::uint64_t n, double r3) {
  const auto s = supersat_constants();
  const double two_beta = 2.0 * s.beta;
  const double cross = thm3_crossover(s.beta);
  const double hi = thm3_base(2.756), lo = thm3_base(2.69);
  BoundReport r;
  r.name = "thm3";
  r.inputs = {{"n", static_cast<double>(n)}, {"r3", r3}};
  r.value = thm3_bound(static_cast<double>(n), r3);
  r.trail = {{"base_at_r3_base_2.756", hi}, {"base_at_r3_base_2.69", lo}, {"two_beta", two_beta}, {"crossover_r3_base", cross}};
  r.verdicts = {{"base with r3 = 2.756^n rounds to 5.75", std::abs(hi - 5.75) < 0.005},
                {"base with r3 = 2.69^n is below 2 beta", lo < two_beta},
                {"2.69 < crossover < 2.756", 2.69 < cross && cross < 2.756}};
  return r;
}

struct QuadraticCheck {
  bool holds = false;
  std::size_t total = 0;
  double root = 0.0;        // (3^n + sqrt(3^2n + 2^(2n+2) 3^n r3)) / 2
  double sum_squares = 0.0;  // |w|^2
  double cauchy_lower = 0.0;  // S^2 / 3^n
  double pair_upper = 0.0;    // S + 2^(2n) r3
  std::size_t max_intersection = 0;
};

/// Replays the Cauchy-Schwarz chain on a concrete (*)_6 system.
inline QuadraticCheck quadratic_bound_check(const SubsetSystem& s, std::size_t r3) {
  QuadraticCheck q;
  const double points = std::pow(3.0, s.n);
  const double labels = std::pow(2.0, s.n);
  std::vector<double> w(static_cast<std::size_t>(points), 0.0);
  for (const auto& a : s.sets)
    for (auto i : a.indices()) w[i] += 1.0;
  q.total = s.total_size();
  const double S = static_cast<double>(q.total);
  for (double x : w) q.sum_squares += x * x;
  for (std::size_t i = 0; i < s.num_sets(); ++i)
    for (std::size_t j = i + 1; j < s.num_sets(); ++j)
      q.max_intersection = std::max(q.max_intersection, (s.sets[i].mask() & s.sets[j].mask()).count());
  q.cauchy_lower = S * S / points;
  q.pair_upper = S + labels * labels * static_cast<double>(r3);
  q.root = (points + std::sqrt(points * points + 4.0 * labels * labels * points * static_cast<double>(r3))) / 2.0;
  constexpr double eps = 1e-9;
  q.holds = q.max_intersection <= r3 && q.cauchy_lower <= q.sum_squares + eps && q.sum_squares <= q.pair_upper + eps &&
            S <= q.root + eps;
  return q;
}

/// Same check on the best known system: n = 1 from the exact 6AP-free optimum
/// of Z_6, n = 2 from the 25-point extremal system.
inline QuadraticCheck quadratic_bound_check(std::uint32_t n, std::size_t r3) {
  if (n == 1) return quadratic_bound_check(decompose(max_ap_free(GroupParams(6, 1), 6).witness), r3);
  if (n == 2) return quadratic_bound_check(build_dim2_extremal({Element{{0, 0}}, Element{{1, 0}}}), r3);
  throw Error(ErrorCode::InvalidArgument, "exact extremal data available for n <= 2 only");
}

struct CorollaryReport {
  double derived_base = 0.0;    // m * 5.709 / 6
  double derived_coefficient = 0.0;
  double two_beta_base = 0.0;   // m * 2 beta / 6
  double stated_coefficient = 0.948;
  double stated_base = 0.0;
  bool discrepancy = false;
};

inline CorollaryReport coset_corollary_base(std::uint64_t m) {
  if (m == 0 || m % 6 != 0) throw Error(ErrorCode::NotMultipleOfSix, "m must be a positive multiple of 6");
  const double md = static_cast<double>(m);
  CorollaryReport c;
  c.derived_coefficient = thm2_base / 6.0;
  c.derived_base = md * c.derived_coefficient;
  c.two_beta_base = md * 2.0 * supersat_constants().beta / 6.0;
  c.stated_base = md * c.stated_coefficient;
  c.discrepancy = c.stated_coefficient < c.derived_coefficient;
  return c;
}

}  // namespace apfree
