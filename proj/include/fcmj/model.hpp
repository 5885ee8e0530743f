#pragma once

// The hierarchical system model: a rooted tree whose internal nodes are
// modules and whose leaves are components, plus per-component cycle limits
// and per-node setup costs. Instances are treated as immutable once built;
// every algorithm takes them by const reference.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fcmj/errors.hpp"
#include "fcmj/numtheory.hpp"
#include "fcmj/rational.hpp"

namespace fcmj {

using NodeId = std::string;

// Which components force a module's maintenance: all component descendants,
// or only its direct component children.
enum class TriggerMode { descendants, direct_children };

inline const char* to_string(TriggerMode m) {
  return m == TriggerMode::descendants ? "descendants" : "direct-children";
}

inline TriggerMode trigger_mode_from_string(std::string_view s) {
  if (s == "descendants") return TriggerMode::descendants;
  if (s == "direct-children") return TriggerMode::direct_children;
  throw ParseError("unknown trigger mode: '" + std::string(s) +
                   "' (expected 'descendants' or 'direct-children')");
}

struct Component {
  NodeId id;
  Rational setup_cost;
  Int cycle_limit{1};
};

struct Module {
  NodeId id;
  Rational setup_cost;
};

struct Instance {
  NodeId root;
  TriggerMode trigger_mode = TriggerMode::descendants;
  std::vector<Module> modules;
  std::vector<Component> components;
  std::vector<std::pair<NodeId, NodeId>> edges;  // parent -> child

  const Component* find_component(const NodeId& id) const {
    for (const auto& c : components)
      if (c.id == id) return &c;
    return nullptr;
  }
  const Module* find_module(const NodeId& id) const {
    for (const auto& m : modules)
      if (m.id == id) return &m;
    return nullptr;
  }
};

// Cycle time per component id. Feasible when every q_c <= f_c.
using Schedule = std::map<NodeId, Int>;

enum class Severity { error, warning };

struct Violation {
  Severity severity;
  NodeId node;
  std::string message;
};

// Every structural problem found, one entry per offending node. An instance
// is usable iff no entry has error severity; warnings flag oddities the model
// tolerates (a module that triggers no components contributes zero cost).
inline std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  auto err = [&](const NodeId& n, std::string msg) {
    out.push_back({Severity::error, n, std::move(msg)});
  };

  std::set<NodeId> module_ids, component_ids, all_ids;
  for (const auto& m : inst.modules) {
    if (m.id.empty()) err(m.id, "node id is empty");
    if (!all_ids.insert(m.id).second) err(m.id, "duplicate node id");
    module_ids.insert(m.id);
    if (m.setup_cost < 0) err(m.id, "setup cost must be >= 0");
  }
  for (const auto& c : inst.components) {
    if (c.id.empty()) err(c.id, "node id is empty");
    if (!all_ids.insert(c.id).second) err(c.id, "duplicate node id");
    component_ids.insert(c.id);
    if (c.setup_cost < 0) err(c.id, "setup cost must be >= 0");
    if (c.cycle_limit < 1) err(c.id, "cycle limit must be >= 1");
  }

  if (inst.root.empty()) {
    err(inst.root, "root id is empty");
  } else if (!all_ids.count(inst.root)) {
    err(inst.root, "root node does not exist");
  } else if (!module_ids.count(inst.root)) {
    err(inst.root, "root must be a module");
  }

  std::map<NodeId, std::vector<NodeId>> children;
  std::map<NodeId, int> parent_count;
  bool edges_ok = true;
  for (const auto& [p, c] : inst.edges) {
    if (!all_ids.count(p) || !all_ids.count(c)) {
      err(all_ids.count(p) ? c : p, "edge references unknown node");
      edges_ok = false;
      continue;
    }
    if (component_ids.count(p)) err(p, "component cannot have children (components are leaves)");
    children[p].push_back(c);
    ++parent_count[c];
  }

  for (const NodeId& id : all_ids) {
    int pc = parent_count.count(id) ? parent_count.at(id) : 0;
    if (id == inst.root) {
      if (pc != 0) err(id, "root must not have a parent; edges do not form a tree");
    } else if (pc > 1) {
      err(id, "node has multiple parents; edges do not form a tree");
    }
  }

  // Reachability from the root covers both disconnection and cycles.
  if (edges_ok && all_ids.count(inst.root)) {
    std::set<NodeId> seen;
    std::vector<NodeId> stack{inst.root};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      if (auto it = children.find(id); it != children.end())
        for (const NodeId& ch : it->second) stack.push_back(ch);
    }
    for (const NodeId& id : all_ids)
      if (!seen.count(id)) err(id, "node unreachable from root; edges do not form a tree");
  }

  for (const NodeId& id : module_ids)
    if (!children.count(id)) err(id, "module has no children (every leaf must be a component)");

  // Warnings only make sense on an otherwise sound instance.
  if (out.empty() && inst.trigger_mode == TriggerMode::direct_children) {
    for (const auto& m : inst.modules) {
      bool any = false;
      for (const NodeId& ch : children[m.id])
        if (component_ids.count(ch)) any = true;
      if (!any)
        out.push_back({Severity::warning, m.id,
                       "module triggers no components in direct-children mode; its cost rate is zero"});
    }
  }
  return out;
}

inline bool is_valid(const std::vector<Violation>& violations) {
  return std::none_of(violations.begin(), violations.end(),
                      [](const Violation& v) { return v.severity == Severity::error; });
}

inline bool is_valid(const Instance& inst) { return is_valid(validate(inst)); }

inline void ensure_valid(const Instance& inst) {
  auto violations = validate(inst);
  for (const auto& v : violations)
    if (v.severity == Severity::error)
      throw ValidationError("invalid instance: node '" + v.node + "': " + v.message);
}

inline std::set<NodeId> trigger_set(const Instance& inst, const NodeId& m, TriggerMode mode) {
  if (inst.find_component(m)) throw std::invalid_argument("trigger_set: node '" + m + "' is a component, not a module");
  if (!inst.find_module(m)) throw std::invalid_argument("trigger_set: unknown module '" + m + "'");

  std::map<NodeId, std::vector<NodeId>> children;
  for (const auto& [p, c] : inst.edges) children[p].push_back(c);

  std::set<NodeId> out;
  if (mode == TriggerMode::direct_children) {
    for (const NodeId& ch : children[m])
      if (inst.find_component(ch)) out.insert(ch);
    return out;
  }
  std::vector<NodeId> stack{m};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (inst.find_component(id)) out.insert(id);
    if (auto it = children.find(id); it != children.end())
      for (const NodeId& ch : it->second) stack.push_back(ch);
  }
  return out;
}

inline std::set<NodeId> trigger_set(const Instance& inst, const NodeId& m) {
  return trigger_set(inst, m, inst.trigger_mode);
}

// Throws InfeasibleError naming the first offending component.
inline void check_schedule(const Instance& inst, const Schedule& schedule) {
  for (const auto& [id, q] : schedule)
    if (!inst.find_component(id))
      throw InfeasibleError("schedule entry for unknown component " + id);
  for (const auto& c : inst.components) {
    auto it = schedule.find(c.id);
    if (it == schedule.end()) throw InfeasibleError("schedule is missing component " + c.id);
    if (it->second < 1)
      throw InfeasibleError("cycle time " + it->second.str() + " must be >= 1 for component " + c.id);
    if (it->second > c.cycle_limit)
      throw InfeasibleError("cycle time " + it->second.str() + " exceeds cycle limit " +
                            c.cycle_limit.str() + " for component " + c.id);
  }
}

inline Int schedule_lcm(const Schedule& schedule) {
  std::vector<Int> qs;
  qs.reserve(schedule.size());
  for (const auto& [id, q] : schedule) qs.push_back(q);
  return lcm(qs);
}

}  // namespace fcmj
