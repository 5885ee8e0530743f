// Command-line front end for the FCMJ toolkit: evaluate and simulate
// schedules, solve instances exactly, factor integers through the
// maintenance solver, and verify the reduction's bounds for a given M.
//
// Exit codes: 0 success, 1 verification checks failed, 2 invalid input,
// 3 infeasible schedule, 4 search budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fcmj/fcmj.hpp"
#include "fcmj/json_io.hpp"

namespace {

using namespace fcmj;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Int parse_int_arg(const std::string& s, const std::string& what) {
  if (s.empty()) throw ParseError(what + ": empty integer argument");
  for (char c : s)
    if (c < '0' || c > '9') throw ParseError(what + ": '" + s + "' is not a decimal integer");
  return Int(s);
}

struct Options {
  bool json = false;
  std::uint64_t budget = SolveOptions{}.budget;
  int subset_cap = kDefaultSubsetCap;
  std::optional<TriggerMode> trigger_mode;
};

Instance load_instance(const std::string& path, const Options& opt) {
  Instance inst = parse_instance(read_file(path));
  if (opt.trigger_mode) inst.trigger_mode = *opt.trigger_mode;
  auto violations = validate(inst);
  for (const auto& v : violations) {
    if (v.severity == Severity::error)
      throw ValidationError("invalid instance: node '" + v.node + "': " + v.message);
    std::cerr << "warning: node '" << v.node << "': " << v.message << "\n";
  }
  return inst;
}

// A schedule argument is either a path or inline JSON (starts with '{').
Schedule load_schedule(const std::string& arg) {
  auto pos = arg.find_first_not_of(" \t\n\r");
  if (pos != std::string::npos && arg[pos] == '{') return parse_schedule(arg);
  return parse_schedule(read_file(arg));
}

void cmd_eval(const std::string& instance_path, const std::string& schedule_arg,
              const Options& opt) {
  Instance inst = load_instance(instance_path, opt);
  Schedule sched = load_schedule(schedule_arg);
  CostBreakdown b = cost_rate(inst, sched, opt.subset_cap);
  if (opt.json) {
    std::cout << breakdown_to_json(b).dump() << "\n";
    return;
  }
  std::cout << "per-component cost rates:\n";
  for (const auto& [id, r] : b.per_component)
    std::cout << "  " << id << ": " << format_approx(r) << "\n";
  std::cout << "per-module cost rates:\n";
  for (const auto& [id, r] : b.per_module)
    std::cout << "  " << id << ": " << format_approx(r) << "\n";
  std::cout << "total = " << format_approx(b.total) << "\n";
}

void cmd_solve(const std::string& instance_path, const Options& opt) {
  Instance inst = load_instance(instance_path, opt);
  SolveReport r = solve_exact(inst, SolveOptions{opt.budget, opt.subset_cap});
  if (opt.json) {
    std::cout << solve_report_to_json(r).dump() << "\n";
    return;
  }
  std::cout << "optimal schedule: " << dump_schedule(r.schedule) << "\n";
  std::cout << "optimal value = " << format_approx(r.value) << "\n";
  std::cout << "evaluations = " << r.evaluations << ", pruned = " << r.pruned << "\n";
}

void cmd_simulate(const std::string& instance_path, const std::string& schedule_arg,
                  const std::string& horizon_arg, const Options& opt) {
  Instance inst = load_instance(instance_path, opt);
  Schedule sched = load_schedule(schedule_arg);
  // Default horizon: one full period of the schedule, so the average is exact.
  Int horizon =
      horizon_arg.empty() ? schedule_lcm(sched) : parse_int_arg(horizon_arg, "--horizon");
  Rational avg = simulated_cost(inst, sched, horizon);
  if (opt.json) {
    nlohmann::json j = {{"horizon", horizon.str()}, {"average_cost", to_string(avg)}};
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << "horizon = " << horizon << "\n";
  std::cout << "average cost = " << format_approx(avg) << "\n";
}

void cmd_factor(const std::string& m_arg, bool with_trace, const Options& opt) {
  Int m = parse_int_arg(m_arg, "factor");
  if (m < 1) throw ParseError("factor: M must be >= 1");
  auto [factors, trace] = factorize(m);
  if (opt.json) {
    nlohmann::json jf = nlohmann::json::array();
    for (const Int& f : factors) jf.push_back(f.str());
    nlohmann::json j = {{"M", m.str()}, {"factors", jf}, {"prime", is_prime(m)}};
    if (with_trace) j["trace"] = trace_to_json(trace);
    std::cout << j.dump() << "\n";
    return;
  }
  if (m == 1) {
    std::cout << "1 = (empty product)\n";
  } else if (factors.size() == 1) {
    std::cout << m << " is prime\n";
  } else {
    std::cout << m << " = ";
    for (std::size_t i = 0; i < factors.size(); ++i)
      std::cout << (i ? " · " : "") << factors[i];
    std::cout << "\n";
  }
  if (with_trace) std::cout << trace_to_json(trace).dump() << "\n";
}

int cmd_verify(const std::string& m_arg, const std::string& cap_arg, const Options& opt) {
  Int m = parse_int_arg(m_arg, "verify");
  Int cap = cap_arg.empty() ? Int(10'000) : parse_int_arg(cap_arg, "--cap");
  ReductionReport rep = verify_reduction(m, cap);
  if (opt.json) {
    std::cout << reduction_report_to_json(rep).dump() << "\n";
  } else {
    Int m2 = m * m;
    std::cout << "M = " << m << (rep.input_prime ? " (prime)" : " (composite)") << "\n";
    std::cout << "step 1: " << (rep.step1_ok ? "ok" : "FAILED") << " (min U over q1 < M = "
              << format_approx(rep.step1_margin.first) << " >= " << m2
              << " = M^2; min U at q1 = M = " << format_approx(rep.step1_margin.second)
              << " <= " << (m2 - m + 1) << " = M^2 - M + 1)\n";
    if (rep.input_prime) {
      std::cout << "lemma:  input is prime; min V over coprime q2 = "
                << to_string(rep.coprime_min_V) << (rep.lemma_ok ? " > " : " NOT > ") << "1/" << m
                << "\n";
    } else {
      std::cout << "lemma:  " << (rep.lemma_ok ? "ok" : "FAILED") << " (min V over q2 coprime with M = "
                << to_string(rep.coprime_min_V) << (rep.lemma_ok ? " > " : " NOT > ") << "1/" << m
                << ")\n";
    }
    std::cout << "optimal V = " << to_string(rep.optimal_V) << "\n";
    if (rep.divisor)
      std::cout << "divisor = " << *rep.divisor << " (from optimal q2 = " << *rep.solved_q2
                << (rep.divisor_ok ? ")" : "; NOT a non-trivial divisor)") << "\n";
    std::cout << (rep.passed() ? "verdict: all checks passed" : "verdict: CHECKS FAILED") << "\n";
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for frequency-constrained maintenance scheduling"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::string trigger_mode_arg;
  app.add_flag("--json", opt.json, "Emit results as JSON");
  app.add_option("--budget", opt.budget, "Solver search budget (full evaluations)");
  app.add_option("--subset-cap", opt.subset_cap,
                 "Max distinct cycle times per module for inclusion-exclusion");
  app.add_option("--trigger-mode", trigger_mode_arg,
                 "Override the instance trigger mode: descendants|direct-children");

  std::string instance_path, schedule_arg, horizon_arg, m_arg, cap_arg;
  bool with_trace = false;

  auto* eval = app.add_subcommand("eval", "Evaluate the exact cost rate of a schedule");
  eval->add_option("instance", instance_path, "Instance JSON file")->required();
  eval->add_option("schedule", schedule_arg, "Schedule JSON file or inline JSON")->required();

  auto* solve = app.add_subcommand("solve", "Find an optimal schedule exactly");
  solve->add_option("instance", instance_path, "Instance JSON file")->required();

  auto* simulate = app.add_subcommand("simulate", "Replay a schedule and average the paid cost");
  simulate->add_option("instance", instance_path, "Instance JSON file")->required();
  simulate->add_option("schedule", schedule_arg, "Schedule JSON file or inline JSON")->required();
  simulate->add_option("--horizon", horizon_arg, "Replay length (default: lcm of the schedule)");

  auto* factor = app.add_subcommand("factor", "Factor an integer via the maintenance solver");
  factor->add_option("M", m_arg, "Integer >= 1 to factor")->required();
  factor->add_flag("--trace", with_trace, "Dump the per-split trace as JSON");

  auto* verify = app.add_subcommand("verify", "Exhaustively verify the reduction's bounds for M");
  verify->add_option("M", m_arg, "Integer >= 4 to verify")->required();
  verify->add_option("--cap", cap_arg, "Verification cap (default 10000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!trigger_mode_arg.empty()) opt.trigger_mode = trigger_mode_from_string(trigger_mode_arg);
    if (*eval) {
      cmd_eval(instance_path, schedule_arg, opt);
    } else if (*solve) {
      cmd_solve(instance_path, opt);
    } else if (*simulate) {
      cmd_simulate(instance_path, schedule_arg, horizon_arg, opt);
    } else if (*factor) {
      cmd_factor(m_arg, with_trace, opt);
    } else if (*verify) {
      return cmd_verify(m_arg, cap_arg, opt);
    }
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.incumbent())
      std::cerr << "best incumbent: " << dump_schedule(e.incumbent()->schedule) << " with value "
                << to_string(e.incumbent()->value) << "\n";
    return 4;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: infeasible schedule: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
