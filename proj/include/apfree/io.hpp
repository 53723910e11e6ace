#pragma once

// JSON forms of subsets, systems, tables and reports.
//
//   subset: {"m": int, "n": int, "points": [[c0, ..., c(n-1)], ...]}
//   system: {"n": int, "num_sets": int, "sets": [{"label": int, "points": [...]}, ...]}
//   table:  {"n": int, "entries": [{"size": int, "min_lines": int, "witness": [...]}, ...]}

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "apfree/bounds.hpp"
#include "apfree/constructions.hpp"
#include "apfree/error.hpp"
#include "apfree/extremal_tables.hpp"
#include "apfree/group.hpp"
#include "apfree/heuristic_search.hpp"
#include "apfree/ip_bound.hpp"
#include "apfree/star_system.hpp"

namespace apfree::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void format_error(const std::string& what) { throw Error(ErrorCode::FormatError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) format_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::uint64_t uint_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) format_error(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline Json element_json(const Element& e) { return Json(e.coords); }

inline Json points_json(const Subset& s) {
  Json pts = Json::array();
  for (const auto& e : s.elements()) pts.push_back(element_json(e));
  return pts;
}

// Parses a point list, rejecting bad coordinates and duplicates.
inline Subset points_from_json(const GroupParams& g, const Json& pts) {
  if (!pts.is_array()) format_error("\"points\" must be an array");
  Subset s(g);
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != g.n()) format_error("point must be an array of " + std::to_string(g.n()) + " coordinates");
    Element e;
    for (const auto& c : p) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0 || c.get<std::int64_t>() >= g.m())
        format_error("coordinate out of range [0, " + std::to_string(g.m()) + ")");
      e.coords.push_back(c.get<std::uint32_t>());
    }
    const Index idx = g.encode(e);
    if (s.contains(idx)) format_error("duplicate point " + Json(e.coords).dump());
    s.insert(idx);
  }
  return s;
}

inline GroupParams group_from_json(std::uint64_t m, std::uint64_t n) {
  if (m < 2 || n < 1 || m > 0xffffffffu || n > 64) format_error("invalid m or n");
  try {
    return GroupParams(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
  } catch (const Error& e) {
    format_error(e.what());
  }
}

inline Json to_json(const Subset& s) {
  return Json{{"m", s.params().m()}, {"n", s.params().n()}, {"points", points_json(s)}};
}

inline Subset subset_from_json(const Json& j) {
  const GroupParams g = group_from_json(uint_field(j, "m"), uint_field(j, "n"));
  return points_from_json(g, field(j, "points"));
}

inline Json to_json(const SubsetSystem& s) {
  Json sets = Json::array();
  for (std::size_t i = 0; i < s.num_sets(); ++i) sets.push_back(Json{{"label", i}, {"points", points_json(s.sets[i])}});
  return Json{{"n", s.n}, {"num_sets", s.num_sets()}, {"sets", sets}};
}

inline SubsetSystem system_from_json(const Json& j) {
  const auto n = uint_field(j, "n");
  const auto num_sets = uint_field(j, "num_sets");
  const GroupParams g = group_from_json(3, n);
  if (num_sets < 1 || num_sets > 4096) format_error("num_sets out of range");
  const Json& sets = field(j, "sets");
  if (!sets.is_array() || sets.size() != num_sets) format_error("\"sets\" must list exactly num_sets members");
  SubsetSystem sys(static_cast<std::uint32_t>(n), num_sets);
  std::set<std::uint64_t> seen;
  for (const auto& member : sets) {
    const auto label = uint_field(member, "label");
    if (label >= num_sets || !seen.insert(label).second) format_error("labels must be exactly 0..num_sets-1");
    sys.sets[label] = points_from_json(g, field(member, "points"));
  }
  return sys;
}

inline Json to_json(const MinLineTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries)
    entries.push_back(Json{{"size", e.size}, {"min_lines", e.min_lines}, {"witness", points_json(e.witness)}});
  return Json{{"n", t.n}, {"entries", entries}};
}

inline MinLineTable table_from_json(const Json& j) {
  const auto n = uint_field(j, "n");
  if (n < 1 || n > 3) format_error("table dimension must be 1..3");
  const GroupParams g(3, static_cast<std::uint32_t>(n));
  MinLineTable t{static_cast<std::uint32_t>(n), {}, true};
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) format_error("\"entries\" must be an array");
  for (const auto& e : entries)
    t.entries.push_back({static_cast<std::size_t>(uint_field(e, "size")), static_cast<std::size_t>(uint_field(e, "min_lines")),
                         points_from_json(g, field(e, "witness"))});
  return t;
}

inline Json to_json(const Progression& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms) terms.push_back(element_json(t));
  return Json{{"start", element_json(p.start)}, {"step", element_json(p.step)}, {"k", p.length}, {"terms", terms}};
}

inline Json to_json(const SubsetSystem& s, const StarWitness& w) {
  const GroupParams base = s.base();
  Json line = Json::array();
  for (auto p : w.line.points) line.push_back(element_json(base.decode(p)));
  Json j{{"property", w.property},
         {"labels", Json::array({w.label1, w.label2})},
         {"line_id", w.line_id},
         {"line", line},
         {"roles", Json{{"a", element_json(base.decode(w.a))}, {"b", element_json(base.decode(w.b))}, {"c", element_json(base.decode(w.c))}}}};
  if (s.num_sets() == (std::size_t{1} << s.n)) j["progression"] = to_json(witness_progression(s, w));
  return j;
}

inline Json to_json(const PackingInstance& inst) {
  return Json{{"cost", inst.cost}, {"num_sets", inst.num_sets}, {"line_budget", inst.line_budget}};
}

inline PackingInstance instance_from_json(const Json& j) {
  PackingInstance inst;
  const Json& cost = field(j, "cost");
  if (!cost.is_array()) format_error("\"cost\" must be an array");
  for (const auto& c : cost) {
    if (!c.is_number_integer() || c.get<std::int64_t>() < 0) format_error("costs must be nonnegative integers");
    inst.cost.push_back(c.get<std::size_t>());
  }
  inst.num_sets = uint_field(j, "num_sets");
  inst.line_budget = uint_field(j, "line_budget");
  return inst;
}

inline Json to_json(const PackingSolution& s) {
  Json counts = Json::object();
  for (const auto& [j, x] : s.counts) counts[std::to_string(j)] = x;
  return Json{{"objective", s.objective}, {"counts", counts}};
}

inline PackingSolution solution_from_json(const Json& j) {
  PackingSolution s;
  s.objective = uint_field(j, "objective");
  const Json& counts = field(j, "counts");
  if (!counts.is_object()) format_error("\"counts\" must be an object");
  for (const auto& [key, val] : counts.items()) {
    if (!val.is_number_integer() || val.get<std::int64_t>() < 0) format_error("counts must be nonnegative integers");
    std::size_t pos = 0;
    std::size_t size = 0;
    try {
      size = std::stoul(key, &pos);
    } catch (const std::exception&) {
      format_error("count key must be a size");
    }
    if (pos != key.size()) format_error("count key must be a size");
    s.counts[size] = val.get<std::size_t>();
  }
  return s;
}

inline Json to_json(const BoundReport& r) {
  Json inputs = Json::object(), trail = Json::object(), verdicts = Json::array();
  for (const auto& q : r.inputs) inputs[q.name] = q.value;
  for (const auto& q : r.trail) trail[q.name] = q.value;
  for (const auto& v : r.verdicts) verdicts.push_back(Json{{"statement", v.statement}, {"holds", v.holds}});
  return Json{{"name", r.name}, {"inputs", inputs}, {"value", r.value}, {"trail", trail}, {"verdicts", verdicts}};
}

inline Json to_json(const ConstructionRecord& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) claims.push_back(Json{{"claim", c.description}, {"verified", c.verified}});
  Json payload = std::holds_alternative<Subset>(r.payload) ? to_json(std::get<Subset>(r.payload)) : to_json(std::get<SubsetSystem>(r.payload));
  Json j{{"name", r.name},
         {"modulus", r.modulus},
         {"dimension", r.dimension},
         {"payload_kind", std::holds_alternative<Subset>(r.payload) ? "subset" : "system"},
         {"payload", payload},
         {"claimed_size", r.claimed_size},
         {"claims", claims},
         {"verified", r.verified()}};
  if (r.progression) j["progression"] = to_json(*r.progression);
  return j;
}

inline Json to_json(const TraceRecord& t) {
  return Json{{"restart", t.restart}, {"iteration", t.iteration}, {"total", t.total}, {"move", to_string(t.move)}};
}

/// Kind of a JSON document accepted by verify.
enum class DocKind { Subset, System, Table, Certificate, Unknown };

inline DocKind classify(const Json& j) {
  if (!j.is_object()) return DocKind::Unknown;
  if (j.contains("command") && j.contains("witness")) return DocKind::Certificate;
  if (j.contains("sets")) return DocKind::System;
  if (j.contains("entries")) return DocKind::Table;
  if (j.contains("m") && j.contains("points")) return DocKind::Subset;
  return DocKind::Unknown;
}

}  // namespace apfree::io
