#pragma once

// Exact minimization of the maintenance cost rate over integer cycle times.
// Depth-first search over components in sorted-id order, cycle times
// descending from the limit, pruned by an exact lower bound on every
// completion of the current prefix. Ties break to the lexicographically
// smallest schedule, so results are reproducible.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcmj/objective.hpp"

namespace fcmj {

struct SolveOptions {
  std::uint64_t budget = 100'000'000;  // max full objective evaluations
  int subset_cap = kDefaultSubsetCap;
};

struct SolveReport {
  Schedule schedule;
  Rational value;
  std::uint64_t evaluations = 0;  // full objective evaluations
  std::uint64_t pruned = 0;       // partial assignments cut by the lower bound
};

// The search gave up before proving optimality. The incumbent, when present,
// is the best schedule seen but carries no optimality guarantee.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& msg, std::optional<SolveReport> incumbent)
      : std::runtime_error(msg), incumbent_(std::move(incumbent)) {}
  const std::optional<SolveReport>& incumbent() const { return incumbent_; }

 private:
  std::optional<SolveReport> incumbent_;
};

namespace detail {

// Search-ready view of an instance: components sorted by id, module trigger
// sets resolved to component indices, zero-trigger modules dropped.
struct SearchInstance {
  struct Comp {
    NodeId id;
    Rational cost;
    Int limit;
  };
  struct Mod {
    Rational cost;
    std::vector<std::size_t> trigger;
  };
  std::vector<Comp> comps;
  std::vector<Mod> mods;

  static SearchInstance build(const Instance& inst, TriggerMode mode) {
    SearchInstance s;
    for (const auto& c : inst.components) s.comps.push_back({c.id, c.setup_cost, c.cycle_limit});
    std::sort(s.comps.begin(), s.comps.end(),
              [](const Comp& a, const Comp& b) { return a.id < b.id; });
    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < s.comps.size(); ++i) index[s.comps[i].id] = i;
    for (const auto& m : inst.modules) {
      Mod mod{m.setup_cost, {}};
      for (const NodeId& c : trigger_set(inst, m.id, mode)) mod.trigger.push_back(index.at(c));
      if (!mod.trigger.empty()) s.mods.push_back(std::move(mod));
    }
    return s;
  }

  Rational eval(const std::vector<Int>& q, int subset_cap) const {
    Rational total = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) total += comps[i].cost / Rational(q[i]);
    for (const Mod& m : mods) {
      if (m.cost == 0) continue;
      std::vector<Int> qs;
      qs.reserve(m.trigger.size());
      for (std::size_t i : m.trigger) qs.push_back(q[i]);
      total += module_cost_rate(m.cost, std::move(qs), subset_cap);
    }
    return total;
  }

  // Valid lower bound given values[i] = the pinned cycle time for fixed
  // components and the cycle limit for free ones: K_c/values[c] per
  // component, K_m / min over the trigger set of values for each module
  // (a union of progressions is at least as dense as its densest member).
  Rational bound_over(const std::vector<Int>& values) const {
    Rational b = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) b += comps[i].cost / Rational(values[i]);
    for (const Mod& m : mods) {
      const Int* mn = &values[m.trigger.front()];
      for (std::size_t i : m.trigger)
        if (values[i] < *mn) mn = &values[i];
      b += m.cost / Rational(*mn);
    }
    return b;
  }
};

}  // namespace detail

// Lower bound on the cost of any feasible completion of a partial schedule:
// components listed in `fixed` contribute K_c/q_c, the rest K_c/f_c, and each
// module K_m over the smallest of those denominators in its trigger set.
inline Rational partial_lower_bound(const Instance& inst, const Schedule& fixed) {
  ensure_valid(inst);
  auto s = detail::SearchInstance::build(inst, inst.trigger_mode);
  for (const auto& [id, q] : fixed) {
    if (!inst.find_component(id))
      throw std::invalid_argument("partial_lower_bound: unknown component " + id);
    if (q < 1) throw std::invalid_argument("partial_lower_bound: cycle times must be >= 1");
  }
  std::vector<Int> values;
  values.reserve(s.comps.size());
  for (const auto& c : s.comps) {
    auto it = fixed.find(c.id);
    values.push_back(it != fixed.end() ? it->second : c.limit);
  }
  return s.bound_over(values);
}

// Global exact minimum over all feasible integer schedules. Throws
// BudgetExceededError once more than `budget` full evaluations would be
// needed; pruning normally keeps the count far below the feasible count.
inline SolveReport solve_exact(const Instance& inst, const SolveOptions& opt = {}) {
  ensure_valid(inst);
  auto s = detail::SearchInstance::build(inst, inst.trigger_mode);
  const std::size_t n = s.comps.size();

  std::vector<Int> q(n), values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = s.comps[i].limit;

  std::vector<Int> best_q;
  Rational best_value;
  bool have = false;
  std::uint64_t evaluations = 0, pruned = 0;

  auto incumbent = [&]() -> std::optional<SolveReport> {
    if (!have) return std::nullopt;
    SolveReport r;
    for (std::size_t i = 0; i < n; ++i) r.schedule[s.comps[i].id] = best_q[i];
    r.value = best_value;
    r.evaluations = evaluations;
    r.pruned = pruned;
    return r;
  };

  // Descending iteration visits schedules in lexicographically decreasing
  // order, so accepting on ties always keeps the lex-smallest optimum.
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      ++evaluations;
      if (evaluations > opt.budget)
        throw BudgetExceededError("solve_exact: search budget of " + std::to_string(opt.budget) +
                                      " evaluations exceeded without proof of optimality",
                                  incumbent());
      Rational v = s.eval(q, opt.subset_cap);
      if (!have || v <= best_value) {
        best_value = std::move(v);
        best_q = q;
        have = true;
      }
      return;
    }
    for (Int t = s.comps[depth].limit; t >= 1; --t) {
      q[depth] = t;
      values[depth] = t;
      if (have && s.bound_over(values) > best_value) {
        ++pruned;
        continue;
      }
      self(self, depth + 1);
    }
    values[depth] = s.comps[depth].limit;
  };
  dfs(dfs, 0);

  SolveReport r = *incumbent();
  r.evaluations = evaluations;
  r.pruned = pruned;
  return r;
}

// The two-components-in-one-module special case, minimized directly:
//   (K0+K1)/q1 + (K0+K2)/q2 - K0/lcm(q1,q2),  1 <= qi <= fi.
// Same search order, bound, and tie-break as solve_exact on the equivalent
// instance, but each evaluation is a single exact fraction over a common
// denominator and comparisons cross-multiply, which keeps the hot loop of the
// factoring reduction cheap. Component ids in the report are "1" and "2".
inline SolveReport solve_two_component(const Rational& K0, const Rational& K1, const Rational& K2,
                                       const Int& f1, const Int& f2) {
  if (K0 < 0 || K1 < 0 || K2 < 0)
    throw std::invalid_argument("solve_two_component: setup costs must be >= 0");
  if (f1 < 1 || f2 < 1)
    throw std::invalid_argument("solve_two_component: cycle limits must be >= 1");

  // Costs over one shared denominator d: K0 = n0/d, K0+K1 = a/d, K0+K2 = b/d.
  Int d = lcm(lcm(denom(K0), denom(K1)), denom(K2));
  const Int n0 = numer(K0) * (d / denom(K0));
  const Int n1 = numer(K1) * (d / denom(K1));
  const Int n2 = numer(K2) * (d / denom(K2));
  const Int a = n0 + n1;
  const Int b = n0 + n2;

  Int best_num, best_den = 0, best_q1, best_q2;
  std::uint64_t evaluations = 0, pruned = 0;

  for (Int q1 = f1; q1 >= 1; --q1) {
    if (best_den != 0) {
      // Prefix bound with q1 pinned: K1/q1 + K2/f2 + K0/min(q1, f2).
      const Int& mn = q1 < f2 ? q1 : f2;
      Int bnum = n1 * (f2 * mn) + n2 * (q1 * mn) + n0 * (q1 * f2);
      Int bden = d * q1 * f2 * mn;
      if (bnum * best_den > best_num * bden) {
        ++pruned;
        continue;
      }
    }
    for (Int q2 = f2; q2 >= 1; --q2) {
      Int g = boost::multiprecision::gcd(q1, q2);
      Int l = q1 / g * q2;
      // value = (a*(l/q1) + b*(l/q2) - n0) / (d*l); l/q1 = q2/g, l/q2 = q1/g.
      Int num = a * (q2 / g) + b * (q1 / g) - n0;
      Int den = d * l;
      ++evaluations;
      if (best_den == 0 || num * best_den <= best_num * den) {
        best_num = std::move(num);
        best_den = std::move(den);
        best_q1 = q1;
        best_q2 = q2;
      }
    }
  }

  SolveReport r;
  r.schedule = {{"1", best_q1}, {"2", best_q2}};
  r.value = Rational(best_num, best_den);
  r.evaluations = evaluations;
  r.pruned = pruned;
  return r;
}

}  // namespace fcmj
