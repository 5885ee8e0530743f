#pragma once

// Exact evaluation of the maintenance cost rate, three independent ways:
// the alternating inclusion-exclusion sum over lcms, direct counting of a
// union of progressions over one full period, and a time-domain replay.
// The three must agree exactly; tests hold them to that.

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "fcmj/model.hpp"

namespace fcmj {

// Hard ceiling on distinct cycle times per module before the 2^n subset
// enumeration is refused in favor of the counting or replay evaluators.
inline constexpr int kDefaultSubsetCap = 20;

// Largest period union_density will count over.
inline constexpr std::uint64_t kDefaultPeriodCap = 10'000'000;

struct CostBreakdown {
  std::map<NodeId, Rational> per_component;
  std::map<NodeId, Rational> per_module;
  Rational total;
};

// setup * sum over nonempty subsets C of the distinct cycle times of
// (-1)^{|C|+1} / lcm(C). Duplicates are dropped first: equal cycle times
// describe the same progression, and the alternating sum is over distinct
// progressions.
inline Rational module_cost_rate(const Rational& setup, std::vector<Int> cycle_times,
                                 int subset_cap = kDefaultSubsetCap) {
  if (cycle_times.empty())
    throw std::invalid_argument("module_cost_rate: empty cycle-time multiset");
  for (const Int& q : cycle_times)
    if (q < 1) throw std::invalid_argument("module_cost_rate: cycle times must be >= 1");

  std::sort(cycle_times.begin(), cycle_times.end());
  cycle_times.erase(std::unique(cycle_times.begin(), cycle_times.end()), cycle_times.end());
  if (static_cast<int>(cycle_times.size()) > subset_cap)
    throw std::domain_error("module_cost_rate: " + std::to_string(cycle_times.size()) +
                            " distinct cycle times exceed the subset cap of " +
                            std::to_string(subset_cap) +
                            "; use union_density or simulated_cost instead");

  Rational sum = 0;
  // Subsets are extended one index at a time; each added element flips the sign.
  auto visit = [&](auto&& self, std::size_t start, const Int& current_lcm, int sign) -> void {
    for (std::size_t j = start; j < cycle_times.size(); ++j) {
      Int l = lcm(current_lcm, cycle_times[j]);
      sum += Rational(Int(sign), l);
      self(self, j + 1, l, -sign);
    }
  };
  visit(visit, 0, Int(1), +1);
  return setup * sum;
}

// Fraction of t in 1..P hit by some progression, P = lcm of the cycle times.
// Counts directly with a sieve; never touches the inclusion-exclusion sum,
// so it stands as an independent check of module_cost_rate.
inline Rational union_density(std::vector<Int> cycle_times,
                              std::uint64_t period_cap = kDefaultPeriodCap) {
  if (cycle_times.empty()) throw std::invalid_argument("union_density: empty cycle-time multiset");
  for (const Int& q : cycle_times)
    if (q < 1) throw std::invalid_argument("union_density: cycle times must be >= 1");

  std::sort(cycle_times.begin(), cycle_times.end());
  cycle_times.erase(std::unique(cycle_times.begin(), cycle_times.end()), cycle_times.end());

  Int period = lcm(cycle_times);
  if (period > period_cap)
    throw std::domain_error("union_density: period " + period.str() + " exceeds cap " +
                            std::to_string(period_cap));
  const auto p = period.convert_to<std::uint64_t>();

  std::vector<bool> hit(p + 1, false);
  for (const Int& q : cycle_times) {
    const auto step = q.convert_to<std::uint64_t>();
    for (std::uint64_t t = step; t <= p; t += step) hit[t] = true;
  }
  std::uint64_t count = 0;
  for (std::uint64_t t = 1; t <= p; ++t)
    if (hit[t]) ++count;
  return Rational(Int(count), period);
}

// Exact cost rate of a feasible schedule: K_c/q_c per component, the
// inclusion-exclusion rate per module (zero for an empty trigger set).
inline CostBreakdown cost_rate(const Instance& inst, const Schedule& schedule,
                               int subset_cap = kDefaultSubsetCap) {
  ensure_valid(inst);
  check_schedule(inst, schedule);

  CostBreakdown out;
  out.total = 0;
  for (const auto& c : inst.components) {
    Rational r = c.setup_cost / Rational(schedule.at(c.id));
    out.per_component[c.id] = r;
    out.total += r;
  }
  for (const auto& m : inst.modules) {
    std::set<NodeId> trig = trigger_set(inst, m.id);
    Rational r = 0;
    if (!trig.empty()) {
      std::vector<Int> qs;
      qs.reserve(trig.size());
      for (const NodeId& c : trig) qs.push_back(schedule.at(c));
      r = module_cost_rate(m.setup_cost, std::move(qs), subset_cap);
    }
    out.per_module[m.id] = r;
    out.total += r;
  }
  return out;
}

// Replays t = 1..horizon and averages what was actually paid. Time 0 is the
// fresh state and pays nothing; component c pays at multiples of q_c, module
// m pays whenever at least one component in its trigger set is maintained.
inline Rational simulated_cost(const Instance& inst, const Schedule& schedule, const Int& horizon) {
  ensure_valid(inst);
  check_schedule(inst, schedule);
  if (horizon < 1) throw std::invalid_argument("simulated_cost: horizon must be >= 1");
  if (horizon > std::numeric_limits<std::uint64_t>::max())
    throw std::domain_error("simulated_cost: horizon " + horizon.str() + " is too large to replay");
  const auto h = horizon.convert_to<std::uint64_t>();

  const std::size_t n = inst.components.size();
  std::vector<std::uint64_t> step(n, 0);  // 0: never maintained within the horizon
  std::map<NodeId, std::size_t> comp_index;
  for (std::size_t i = 0; i < n; ++i) {
    comp_index[inst.components[i].id] = i;
    const Int& q = schedule.at(inst.components[i].id);
    if (q <= h) step[i] = q.convert_to<std::uint64_t>();
  }
  std::vector<std::vector<std::size_t>> trigger(inst.modules.size());
  for (std::size_t j = 0; j < inst.modules.size(); ++j)
    for (const NodeId& c : trigger_set(inst, inst.modules[j].id))
      trigger[j].push_back(comp_index.at(c));

  std::vector<std::uint64_t> comp_paid(n, 0), mod_paid(inst.modules.size(), 0);
  std::vector<char> maintained(n);
  for (std::uint64_t t = 1; t <= h; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      maintained[i] = step[i] != 0 && t % step[i] == 0;
      if (maintained[i]) ++comp_paid[i];
    }
    for (std::size_t j = 0; j < trigger.size(); ++j)
      for (std::size_t i : trigger[j])
        if (maintained[i]) {
          ++mod_paid[j];
          break;
        }
  }

  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) total += inst.components[i].setup_cost * Int(comp_paid[i]);
  for (std::size_t j = 0; j < inst.modules.size(); ++j)
    total += inst.modules[j].setup_cost * Int(mod_paid[j]);
  return total / Rational(horizon);
}

}  // namespace fcmj
