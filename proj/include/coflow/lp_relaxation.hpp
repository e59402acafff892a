#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "ordering_result.hpp"
#include "simplex.hpp"

namespace coflow {

// Geometric interval end points tau_0 = 0, tau_l = 2^(l-1), with tau_L >= T.
struct IntervalGrid {
  std::int64_t horizon = 0;  // T = max_k r_k + total demand
  std::size_t intervals = 0;  // L
  std::vector<std::int64_t> tau;  // size L + 1

  static IntervalGrid for_horizon(std::int64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    IntervalGrid g;
    g.horizon = horizon;
    g.tau.push_back(0);
    std::int64_t end = 1;
    g.tau.push_back(end);
    while (end < horizon) {
      end *= 2;
      g.tau.push_back(end);
    }
    g.intervals = g.tau.size() - 1;
    return g;
  }

  static IntervalGrid for_instance(const Instance& instance) {
    return for_horizon(instance.max_release() + instance.total_demand());
  }

  // Smallest l with value <= tau_l, i.e. value in (tau_{l-1}, tau_l]. Requires 1 <= value <= tau_L.
  std::size_t interval_of(std::int64_t value) const {
    if (value < 1 || value > tau.back()) throw std::out_of_range("value outside the interval grid");
    std::size_t l = 1;
    while (tau[l] < value) ++l;
    return l;
  }
};

class LpFailure : public std::runtime_error {
 public:
  LpFailure(lp::Status status, const std::string& what)
      : std::runtime_error(what + ": " + lp::to_string(status)), status_(status) {}
  lp::Status status() const { return status_; }

 private:
  lp::Status status_;
};

class HorizonTooLarge : public std::length_error {
 public:
  HorizonTooLarge(std::int64_t horizon, std::int64_t cap)
      : std::length_error("LP-EXP horizon T=" + std::to_string(horizon) + " exceeds the cap of " + std::to_string(cap)),
        horizon_(horizon) {}
  std::int64_t horizon() const { return horizon_; }

 private:
  std::int64_t horizon_;
};

// A time-indexed relaxation: variable (k, p) says coflow k completes in
// period p, whose objective value is `period_value[p]` and whose capacity
// bound is `period_end[p]`.
struct IndexedLp {
  lp::LpProblem problem;
  std::vector<double> period_value;       // tau_{l-1} or t
  std::vector<std::int64_t> period_end;   // tau_l or t
  std::vector<std::vector<std::optional<std::size_t>>> variable;  // [k][p] -> column; nullopt when fixed to 0
  std::size_t load_rows = 0;
  std::size_t redundant_load_rows = 0;  // load rows omitted because they can never bind
  lp::StartingBasis start;              // greedy feasible assignment, one column per coflow
};

struct LpSolution {
  std::vector<std::vector<double>> x;  // [k][p]
  double objective = 0.0;
  std::vector<double> cbar;  // sum_p period_value[p] x[k][p]
  std::size_t pivots = 0;
};

namespace detail {

// Shared builder: rows are laid out period-major (inputs then outputs per
// period), followed by one assignment row per coflow.
inline IndexedLp build_indexed_lp(const Instance& instance, std::vector<double> period_value,
                                  std::vector<std::int64_t> period_end, const char* tag) {
  const std::size_t n = instance.size();
  const std::size_t m = instance.m();
  const std::size_t periods = period_value.size();
  IndexedLp lp;
  lp.period_value = std::move(period_value);
  lp.period_end = std::move(period_end);

  std::vector<PortLoads> loads;
  loads.reserve(n);
  for (const CoflowMatrix& c : instance.coflows()) loads.emplace_back(c.demand());
  // Port loads indexed 0..m-1 inputs, m..2m-1 outputs.
  auto port_load = [&](CoflowIndex k, std::size_t port) {
    return port < m ? loads[k].input_loads[port] : loads[k].output_loads[port - m];
  };
  std::vector<std::int64_t> port_total(2 * m, 0);
  for (CoflowIndex k = 0; k < n; ++k) {
    for (std::size_t p = 0; p < 2 * m; ++p) port_total[p] += port_load(k, p);
  }

  // row_of[period][port]
  std::vector<std::vector<std::optional<std::size_t>>> row_of(periods, std::vector<std::optional<std::size_t>>(2 * m));
  for (std::size_t l = 0; l < periods; ++l) {
    for (std::size_t p = 0; p < 2 * m; ++p) {
      if (port_total[p] <= lp.period_end[l]) {
        ++lp.redundant_load_rows;
        continue;
      }
      const std::string name = std::string(p < m ? "in" : "out") + std::to_string(p % m + 1) + "_" + tag +
                               std::to_string(lp.period_end[l]);
      row_of[l][p] = lp.problem.add_row(lp::RowType::kLessEqual, static_cast<double>(lp.period_end[l]), name);
      ++lp.load_rows;
    }
  }
  std::vector<std::size_t> assign_row(n);
  for (CoflowIndex k = 0; k < n; ++k) {
    assign_row[k] = lp.problem.add_row(lp::RowType::kEqual, 1.0, "assign" + std::to_string(k + 1));
  }

  lp.variable.assign(n, std::vector<std::optional<std::size_t>>(periods));
  for (CoflowIndex k = 0; k < n; ++k) {
    const std::int64_t earliest = instance[k].release() + loads[k].load;
    const double w = instance[k].weight().to_double();
    for (std::size_t l = 0; l < periods; ++l) {
      if (earliest > lp.period_end[l]) continue;  // fixed to zero
      const std::size_t col = lp.problem.add_variable(
          w * lp.period_value[l], "x" + std::to_string(k + 1) + "_" + std::to_string(lp.period_end[l]));
      lp.variable[k][l] = col;
      for (std::size_t later = l; later < periods; ++later) {
        for (std::size_t p = 0; p < 2 * m; ++p) {
          const std::int64_t load = port_load(k, p);
          if (load != 0 && row_of[later][p]) {
            lp.problem.add_coefficient(*row_of[later][p], col, static_cast<double>(load));
          }
        }
      }
      lp.problem.add_coefficient(assign_row[k], col, 1.0);
    }
  }

  // Starting point: coflows by rho / w ascending, each put in the earliest
  // period that keeps every load row of that period and later ones feasible.
  std::vector<CoflowIndex> sequence = identity_order(n);
  std::stable_sort(sequence.begin(), sequence.end(), [&](CoflowIndex a, CoflowIndex b) {
    return static_cast<__int128>(loads[a].load) * instance[b].weight().units() <
           static_cast<__int128>(loads[b].load) * instance[a].weight().units();
  });
  std::vector<std::vector<std::int64_t>> used(periods, std::vector<std::int64_t>(2 * m, 0));
  for (CoflowIndex k : sequence) {
    std::optional<std::size_t> chosen;
    for (std::size_t l = periods; l-- > 0;) {
      bool fits = true;
      for (std::size_t p = 0; p < 2 * m && fits; ++p) {
        fits = !row_of[l][p] || used[l][p] + port_load(k, p) <= lp.period_end[l];
      }
      if (!fits) break;
      if (lp.variable[k][l]) chosen = l;
    }
    if (!chosen) {
      lp.start = {};
      break;
    }
    for (std::size_t l = *chosen; l < periods; ++l) {
      for (std::size_t p = 0; p < 2 * m; ++p) used[l][p] += port_load(k, p);
    }
    lp.start.rows.push_back(assign_row[k]);
    lp.start.columns.push_back(*lp.variable[k][*chosen]);
  }
  return lp;
}

}  // namespace detail

// Interval-indexed relaxation over the geometric grid. Variables with
// r_k + rho_k > tau_l are fixed to zero by omission.
inline IndexedLp build_interval_lp(const Instance& instance) {
  if (instance.empty()) throw std::invalid_argument("interval LP needs a nonempty instance");
  const IntervalGrid grid = IntervalGrid::for_instance(instance);
  std::vector<double> value;
  std::vector<std::int64_t> end;
  for (std::size_t l = 1; l <= grid.intervals; ++l) {
    value.push_back(static_cast<double>(grid.tau[l - 1]));
    end.push_back(grid.tau[l]);
  }
  return detail::build_indexed_lp(instance, std::move(value), std::move(end), "l");
}

inline constexpr std::int64_t kDefaultExpHorizonCap = 5000;

// Unit-interval relaxation. Periods run t = 1..T', where T' = min(T,
// max_k r_k + largest port total): any mass placed later can move to T'
// without violating a load row, so the optimum is unchanged.
inline IndexedLp build_exp_lp(const Instance& instance, std::int64_t horizon_cap = kDefaultExpHorizonCap) {
  if (instance.empty()) throw std::invalid_argument("LP-EXP needs a nonempty instance");
  const std::int64_t horizon = instance.max_release() + instance.total_demand();
  if (horizon > horizon_cap) throw HorizonTooLarge(horizon, horizon_cap);
  std::int64_t busiest = 0;
  {
    std::vector<std::int64_t> in(instance.m(), 0), out(instance.m(), 0);
    for (const CoflowMatrix& c : instance.coflows()) {
      PortLoads pl(c.demand());
      for (Port p = 0; p < instance.m(); ++p) {
        in[p] += pl.input_loads[p];
        out[p] += pl.output_loads[p];
      }
    }
    for (Port p = 0; p < instance.m(); ++p) busiest = std::max({busiest, in[p], out[p]});
  }
  const std::int64_t effective = std::min(horizon, instance.max_release() + busiest);
  std::vector<double> value;
  std::vector<std::int64_t> end;
  for (std::int64_t t = 1; t <= effective; ++t) {
    value.push_back(static_cast<double>(t));
    end.push_back(t);
  }
  return detail::build_indexed_lp(instance, std::move(value), std::move(end), "t");
}

inline LpSolution solve_indexed_lp(const IndexedLp& lp, const lp::SolverOptions& options = {}) {
  lp::LpResult r = lp::solve_lp(lp.problem, options, &lp.start);
  if (r.status != lp::Status::kOptimal) throw LpFailure(r.status, "coflow LP relaxation");
  LpSolution s;
  s.objective = r.objective;
  s.pivots = r.pivots;
  s.x.assign(lp.variable.size(), std::vector<double>(lp.period_value.size(), 0.0));
  s.cbar.assign(lp.variable.size(), 0.0);
  for (std::size_t k = 0; k < lp.variable.size(); ++k) {
    for (std::size_t l = 0; l < lp.period_value.size(); ++l) {
      if (lp.variable[k][l]) s.x[k][l] = r.x[*lp.variable[k][l]];
      s.cbar[k] += lp.period_value[l] * s.x[k][l];
    }
  }
  return s;
}

inline LpSolution solve_interval_lp(const Instance& instance, const lp::SolverOptions& options = {}) {
  return solve_indexed_lp(build_interval_lp(instance), options);
}

inline LpSolution solve_exp_lp(const Instance& instance, std::int64_t horizon_cap = kDefaultExpHorizonCap,
                               const lp::SolverOptions& options = {}) {
  return solve_indexed_lp(build_exp_lp(instance, horizon_cap), options);
}

// Coflows by approximated completion time C-bar ascending; C-bar is rounded
// to 1e-9 first so ties resolve by index.
inline OrderingResult lp_ordering(const Instance& instance, const lp::SolverOptions& options = {}) {
  LpSolution s = solve_interval_lp(instance, options);
  std::vector<double> scores(s.cbar.size());
  for (std::size_t k = 0; k < scores.size(); ++k) scores[k] = std::round(s.cbar[k] * 1e9) / 1e9;
  return order_by_scores(Rule::kLp, std::move(scores));
}

}  // namespace coflow
