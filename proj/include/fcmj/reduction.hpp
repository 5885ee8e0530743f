#pragma once

// Integer factoring through the maintenance solver. For a composite M the
// two-component instance
//   K0 = 1, K1 = M^2(M-1) - 1, K2 = 0, f1 = M, f2 = M - 2
// has q1 = M in every optimum, and gcd(q2, M) is then a non-trivial divisor
// of M. factorize() recurses on the split; verify_reduction() re-proves the
// two steps of that argument exhaustively for a given M.

#include <optional>
#include <utility>
#include <vector>

#include "fcmj/solver.hpp"

namespace fcmj {

// One node of the divisor-extraction tree produced by factorize().
struct FactorTrace {
  enum class Kind { unit, prime, composite };
  Int M;
  Kind kind = Kind::prime;
  // Populated for composite splits only.
  Instance instance;  // the solved two-component construction
  Int q1, q2;         // optimal cycle times (q1 == M always)
  Int divisor;        // gcd(q2, M)
  std::vector<FactorTrace> children;  // the two recursive pieces
};

struct ReductionReport {
  Int M;
  bool input_prime = false;
  bool step1_ok = false;
  // (min U over q1 <= M-1, min U at q1 = M); first >= M^2 and second
  // <= M^2 - M + 1 whenever step1_ok.
  std::pair<Rational, Rational> step1_margin;
  bool lemma_ok = false;        // every q2 coprime with M has V(q2) > 1/M
  Rational coprime_min_V;
  Rational optimal_V;           // min of V over all feasible q2
  std::optional<Int> divisor;   // absent for prime inputs
  bool divisor_ok = false;      // solver gave q1 = M and 1 < divisor < M
  std::optional<Int> solved_q1, solved_q2;

  bool passed() const { return step1_ok && lemma_ok && (input_prime || divisor_ok); }
};

// The instance whose optimum reveals a divisor of M. Construction is
// polynomial in the bit length of M; M <= 3 leaves no usable q2 range.
inline Instance build_factoring_instance(const Int& M) {
  if (M < 4)
    throw std::invalid_argument("build_factoring_instance: M must be at least 4, got " + M.str());
  Instance inst;
  inst.root = "0";
  inst.trigger_mode = TriggerMode::descendants;
  inst.modules = {{"0", Rational(1)}};
  inst.components = {{"1", Rational(M * M * (M - 1) - 1), M},
                     {"2", Rational(0), M - 2}};
  inst.edges = {{"0", "1"}, {"0", "2"}};
  return inst;
}

// V(q2) = 1/q2 - 1/lcm(M, q2), the objective left once q1 = M is pinned.
inline Rational step2_objective(const Int& M, const Int& q2) {
  if (q2 < 1 || q2 > M - 2)
    throw std::invalid_argument("step2_objective: q2 must satisfy 1 <= q2 <= M-2, got q2 = " +
                                q2.str() + " for M = " + M.str());
  Int l = lcm(M, q2);
  return Rational(1, q2) - Rational(1, l);
}

namespace detail {

struct DivisorPull {
  Instance instance;
  SolveReport report;
  Int q1, q2, divisor;
};

// Runs the actual two-component solver on the construction and takes
// gcd(q2, M). No result checks here; callers decide whether a bad pull is a
// hard error (find_nontrivial_divisor) or a reported failure (verify).
inline DivisorPull pull_divisor(const Int& M) {
  DivisorPull p;
  p.instance = build_factoring_instance(M);
  const Component& c1 = p.instance.components[0];
  const Component& c2 = p.instance.components[1];
  p.report = solve_two_component(p.instance.modules[0].setup_cost, c1.setup_cost, c2.setup_cost,
                                 c1.cycle_limit, c2.cycle_limit);
  p.q1 = p.report.schedule.at("1");
  p.q2 = p.report.schedule.at("2");
  p.divisor = gcd(p.q2, M);
  return p;
}

}  // namespace detail

// Extracts a non-trivial divisor of a composite M >= 4 by solving the
// two-component construction and computing gcd(q2, M). Deterministic given
// the solver tie-break (smallest optimal q2).
inline Int find_nontrivial_divisor(const Int& M) {
  if (M < 4)
    throw std::invalid_argument("find_nontrivial_divisor: M must be at least 4, got " + M.str());
  if (is_prime(M)) throw std::domain_error("find_nontrivial_divisor: input is prime");
  auto p = detail::pull_divisor(M);
  if (p.q1 != M) throw std::logic_error("reduction: solver returned q1 != M");
  if (p.divisor <= 1 || p.divisor >= M)
    throw std::logic_error("reduction: gcd(q2, M) is not a non-trivial divisor");
  return p.divisor;
}

namespace detail {

inline FactorTrace factor_rec(const Int& M, std::vector<Int>& out) {
  FactorTrace t;
  t.M = M;
  if (M == 1) {
    t.kind = FactorTrace::Kind::unit;
    return t;
  }
  if (is_prime(M)) {
    t.kind = FactorTrace::Kind::prime;
    out.push_back(M);
    return t;
  }
  auto p = pull_divisor(M);
  if (p.q1 != M) throw std::logic_error("reduction: solver returned q1 != M");
  if (p.divisor <= 1 || p.divisor >= M)
    throw std::logic_error("reduction: gcd(q2, M) is not a non-trivial divisor");
  t.kind = FactorTrace::Kind::composite;
  t.instance = std::move(p.instance);
  t.q1 = std::move(p.q1);
  t.q2 = std::move(p.q2);
  t.divisor = p.divisor;
  Int rest = M / p.divisor;
  t.children.push_back(factor_rec(p.divisor, out));
  t.children.push_back(factor_rec(rest, out));
  return t;
}

}  // namespace detail

// Prime factorization of M >= 1 (empty for M = 1), every split obtained from
// the maintenance solver, plus the full per-split trace. Factors ascending.
inline std::pair<std::vector<Int>, FactorTrace> factorize(const Int& M) {
  if (M < 1) throw std::invalid_argument("factorize: M must be >= 1, got " + M.str());
  std::vector<Int> factors;
  FactorTrace trace = detail::factor_rec(M, factors);
  std::sort(factors.begin(), factors.end());
  return {std::move(factors), std::move(trace)};
}

// Re-proves the reduction's two steps for one M by exhaustive evaluation:
//   (i)  every q1 <= M-1 gives U >= M^2, while q1 = M stays <= M^2 - M + 1;
//   (ii) every q2 coprime with M has V(q2) > 1/M;
//   (iii) for composite M, the solver's optimum yields 1 < gcd(q2, M) < M.
// Quadratic in M, hence the cap. Prime inputs report steps (i) and (ii) only.
inline ReductionReport verify_reduction(const Int& M, const Int& cap = Int(10'000)) {
  if (M < 4)
    throw std::invalid_argument("verify_reduction: M must be at least 4, got " + M.str());
  if (M > cap)
    throw std::domain_error("verify_reduction: M = " + M.str() + " exceeds cap " + cap.str() +
                            " (the exhaustive check is quadratic in M)");
  ReductionReport rep;
  rep.M = M;
  rep.input_prime = is_prime(M);

  const Int a = M * M * (M - 1);  // 1 + K1, the coefficient on 1/q1
  const Int f2 = M - 2;

  // Full grid of U(q1, q2) = a/q1 + 1/q2 - 1/lcm(q1, q2), as raw fractions.
  Int lt_num, lt_den = 0;    // min over q1 <= M-1
  Int inc_num, inc_den = 0;  // min over q1 == M
  for (Int q1 = 1; q1 <= M; ++q1) {
    for (Int q2 = 1; q2 <= f2; ++q2) {
      Int g = boost::multiprecision::gcd(q1, q2);
      Int l = q1 / g * q2;
      Int num = a * (q2 / g) + (q1 / g) - 1;
      if (q1 < M) {
        if (lt_den == 0 || num * lt_den < lt_num * l) {
          lt_num = num;
          lt_den = l;
        }
      } else if (inc_den == 0 || num * inc_den < inc_num * l) {
        inc_num = num;
        inc_den = l;
      }
    }
  }
  rep.step1_margin = {Rational(lt_num, lt_den), Rational(inc_num, inc_den)};
  rep.step1_ok = rep.step1_margin.first >= M * M && rep.step1_margin.second <= M * M - M + 1;

  // Sweep of V(q2) = 1/q2 - 1/lcm(M, q2) over the feasible range.
  Int v_num, v_den = 0, c_num, c_den = 0;
  for (Int q2 = 1; q2 <= f2; ++q2) {
    Int g = boost::multiprecision::gcd(M, q2);
    Int l = M / g * q2;
    Int num = (l / q2) - 1;
    if (v_den == 0 || num * v_den < v_num * l) {
      v_num = num;
      v_den = l;
    }
    if (g == 1 && (c_den == 0 || num * c_den < c_num * l)) {
      c_num = num;
      c_den = l;
    }
  }
  rep.optimal_V = Rational(v_num, v_den);
  rep.coprime_min_V = Rational(c_num, c_den);
  rep.lemma_ok = rep.coprime_min_V > Rational(1, M);

  if (!rep.input_prime) {
    auto p = detail::pull_divisor(M);
    rep.solved_q1 = p.q1;
    rep.solved_q2 = p.q2;
    rep.divisor = p.divisor;
    rep.divisor_ok = p.q1 == M && p.divisor > 1 && p.divisor < M;
  }
  return rep;
}

}  // namespace fcmj
