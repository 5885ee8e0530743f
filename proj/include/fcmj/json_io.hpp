#pragma once

// JSON instance/schedule formats and serialization of results. Instance dumps
// are canonical: alphabetical keys, nodes sorted by id, edges sorted, exact
// rationals as lowest-term strings. Parsing a dump and re-dumping is
// byte-identical.

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "fcmj/model.hpp"
#include "fcmj/objective.hpp"
#include "fcmj/reduction.hpp"
#include "fcmj/solver.hpp"

namespace fcmj {

using nlohmann::json;

// Integers that fit an unsigned 64-bit value stay JSON numbers; anything
// larger becomes a decimal string (JSON number literals beyond that range
// would be read back through a double and lose precision).
inline json int_to_json(const Int& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
    return v.convert_to<std::uint64_t>();
  return v.str();
}

inline Int int_from_json(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::string_view t = s;
    if (!t.empty() && t.front() == '-') t.remove_prefix(1);
    if (t.empty()) throw ParseError(what + ": invalid integer literal '" + s + "'");
    for (char c : t)
      if (c < '0' || c > '9') throw ParseError(what + ": invalid integer literal '" + s + "'");
    return Int(s);
  }
  throw ParseError(what + ": expected an integer or a decimal string");
}

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j, const std::string& what) {
  if (j.is_number_unsigned() || j.is_number_integer()) return Rational(int_from_json(j, what));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError(what + ": expected a rational string like \"3\" or \"3/4\"");
}

// ---- instance ----

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  Instance inst;
  if (!j.contains("root") || !j.at("root").is_string())
    throw ParseError("instance: missing string field 'root'");
  inst.root = j.at("root").get<std::string>();
  if (j.contains("trigger_mode")) {
    if (!j.at("trigger_mode").is_string()) throw ParseError("instance: 'trigger_mode' must be a string");
    inst.trigger_mode = trigger_mode_from_string(j.at("trigger_mode").get<std::string>());
  }
  if (!j.contains("nodes") || !j.at("nodes").is_array())
    throw ParseError("instance: missing array field 'nodes'");
  for (const json& n : j.at("nodes")) {
    if (!n.is_object() || !n.contains("id") || !n.at("id").is_string() || !n.contains("kind"))
      throw ParseError("instance: each node needs string 'id' and 'kind'");
    const std::string id = n.at("id").get<std::string>();
    const std::string kind = n.at("kind").get<std::string>();
    Rational cost = n.contains("setup_cost")
                        ? rational_from_json(n.at("setup_cost"), "node " + id + " setup_cost")
                        : Rational(0);
    if (kind == "module") {
      if (n.contains("cycle_limit"))
        throw ParseError("instance: module " + id + " cannot carry a cycle_limit");
      inst.modules.push_back({id, cost});
    } else if (kind == "component") {
      if (!n.contains("cycle_limit"))
        throw ParseError("instance: component " + id + " needs a cycle_limit");
      inst.components.push_back(
          {id, cost, int_from_json(n.at("cycle_limit"), "node " + id + " cycle_limit")});
    } else {
      throw ParseError("instance: unknown node kind '" + kind + "' (expected module or component)");
    }
  }
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw ParseError("instance: missing array field 'edges'");
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("instance: each edge must be a [parent, child] pair of ids");
    inst.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return instance_from_json(j);
}

inline json instance_to_json(const Instance& inst) {
  std::vector<json> nodes;
  for (const auto& m : inst.modules)
    nodes.push_back({{"id", m.id}, {"kind", "module"}, {"setup_cost", rational_to_json(m.setup_cost)}});
  for (const auto& c : inst.components)
    nodes.push_back({{"id", c.id},
                     {"kind", "component"},
                     {"setup_cost", rational_to_json(c.setup_cost)},
                     {"cycle_limit", int_to_json(c.cycle_limit)}});
  std::sort(nodes.begin(), nodes.end(),
            [](const json& a, const json& b) { return a.at("id") < b.at("id"); });

  auto edges = inst.edges;
  std::sort(edges.begin(), edges.end());
  json jedges = json::array();
  for (const auto& [p, c] : edges) jedges.push_back({p, c});

  return {{"root", inst.root},
          {"trigger_mode", to_string(inst.trigger_mode)},
          {"nodes", nodes},
          {"edges", jedges}};
}

inline std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(); }

// ---- schedule ----

inline Schedule schedule_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("schedule: expected a JSON object of id -> cycle time");
  Schedule s;
  for (const auto& [id, v] : j.items()) s[id] = int_from_json(v, "schedule entry " + id);
  return s;
}

inline Schedule parse_schedule(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("schedule: ") + e.what());
  }
  return schedule_from_json(j);
}

inline json schedule_to_json(const Schedule& s) {
  json j = json::object();
  for (const auto& [id, q] : s) j[id] = int_to_json(q);
  return j;
}

inline std::string dump_schedule(const Schedule& s) { return schedule_to_json(s).dump(); }

// ---- results ----

inline json breakdown_to_json(const CostBreakdown& b) {
  json pc = json::object(), pm = json::object();
  for (const auto& [id, r] : b.per_component) pc[id] = rational_to_json(r);
  for (const auto& [id, r] : b.per_module) pm[id] = rational_to_json(r);
  return {{"per_component", pc}, {"per_module", pm}, {"total", rational_to_json(b.total)}};
}

inline json solve_report_to_json(const SolveReport& r) {
  return {{"optimal_schedule", schedule_to_json(r.schedule)},
          {"optimal_value", rational_to_json(r.value)},
          {"evaluations", r.evaluations},
          {"pruned", r.pruned}};
}

inline json reduction_report_to_json(const ReductionReport& r) {
  json j = {{"M", r.M.str()},
            {"input_prime", r.input_prime},
            {"step1_ok", r.step1_ok},
            {"step1_margin",
             {rational_to_json(r.step1_margin.first), rational_to_json(r.step1_margin.second)}},
            {"lemma_ok", r.lemma_ok},
            {"coprime_min_V", rational_to_json(r.coprime_min_V)},
            {"optimal_V", rational_to_json(r.optimal_V)},
            {"passed", r.passed()}};
  j["divisor"] = r.divisor ? json(r.divisor->str()) : json(nullptr);
  if (r.solved_q1) j["solved_q1"] = r.solved_q1->str();
  if (r.solved_q2) j["solved_q2"] = r.solved_q2->str();
  return j;
}

inline json trace_to_json(const FactorTrace& t) {
  json j;
  j["M"] = t.M.str();
  switch (t.kind) {
    case FactorTrace::Kind::unit:
      j["kind"] = "unit";
      break;
    case FactorTrace::Kind::prime:
      j["kind"] = "prime";
      break;
    case FactorTrace::Kind::composite: {
      j["kind"] = "composite";
      j["instance"] = instance_to_json(t.instance);
      j["q1"] = t.q1.str();
      j["q2"] = t.q2.str();
      j["divisor"] = t.divisor.str();
      json ch = json::array();
      for (const FactorTrace& c : t.children) ch.push_back(trace_to_json(c));
      j["children"] = ch;
      break;
    }
  }
  return j;
}

}  // namespace fcmj
