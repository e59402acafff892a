#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "core.hpp"
#include "lp_relaxation.hpp"

namespace coflow {

inline double lp_lower_bound(const Instance& instance, const lp::SolverOptions& options = {}) {
  return solve_interval_lp(instance, options).objective;
}

inline double exp_lower_bound(const Instance& instance, std::int64_t horizon_cap = kDefaultExpHorizonCap,
                              const lp::SolverOptions& options = {}) {
  return solve_exp_lp(instance, horizon_cap, options).objective;
}

struct SingleMachineJob {
  std::int64_t processing = 0;
  std::int64_t release = 0;
  Decimal weight = Decimal::from_integer(1);
};

// Smith's rule: optimal for 1||sum w C. Releases are ignored.
inline Decimal wspt_value(std::vector<SingleMachineJob> jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const SingleMachineJob& a, const SingleMachineJob& b) {
    return static_cast<__int128>(a.processing) * b.weight.units() <
           static_cast<__int128>(b.processing) * a.weight.units();
  });
  Decimal sum;
  std::int64_t clock = 0;
  for (const auto& j : jobs) {
    clock += j.processing;
    sum += j.weight * clock;
  }
  return sum;
}

// Preemptive schedule that always runs the available job with the largest
// weight per remaining unit. With equal weights this is SRPT, optimal for
// 1|r_j, pmtn|sum C_j.
inline Decimal preemptive_ratio_value(const std::vector<SingleMachineJob>& jobs) {
  std::vector<std::size_t> by_release(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) by_release[k] = k;
  std::stable_sort(by_release.begin(), by_release.end(),
                   [&](std::size_t a, std::size_t b) { return jobs[a].release < jobs[b].release; });
  std::vector<std::int64_t> left(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) left[k] = jobs[k].processing;
  // Highest w / remaining first; ties by index.
  auto lower_priority = [&](std::size_t a, std::size_t b) {
    const __int128 lhs = static_cast<__int128>(jobs[a].weight.units()) * left[b];
    const __int128 rhs = static_cast<__int128>(jobs[b].weight.units()) * left[a];
    return lhs != rhs ? lhs < rhs : a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(lower_priority)> ready(lower_priority);
  Decimal sum;
  std::int64_t clock = 0;
  std::size_t next = 0;
  while (next < by_release.size() || !ready.empty()) {
    if (ready.empty()) clock = std::max(clock, jobs[by_release[next]].release);
    while (next < by_release.size() && jobs[by_release[next]].release <= clock) ready.push(by_release[next++]);
    const std::size_t k = ready.top();
    ready.pop();
    const std::int64_t until = next < by_release.size() ? jobs[by_release[next]].release : clock + left[k];
    const std::int64_t run = std::min(left[k], until - clock);
    clock += run;
    left[k] -= run;
    if (left[k] == 0) {
      sum += jobs[k].weight * clock;
    } else {
      ready.push(k);
    }
  }
  return sum;
}

struct PortBound {
  Decimal value;
  bool exact = true;  // false: weighted jobs with releases, value is a heuristic
  std::size_t port = 0;  // 0..m-1 inputs, m..2m-1 outputs
};

// Each of the 2m ports as a single machine. A coflow with no load on the port
// still needs r_k + rho_k slots, so it contributes w_k (r_k + rho_k).
inline PortBound port_aggregation_bound(const Instance& instance) {
  const std::size_t m = instance.m();
  const bool zero = instance.zero_release();
  bool equal_weights = true;
  for (const CoflowMatrix& c : instance.coflows()) equal_weights = equal_weights && c.weight() == instance[0].weight();
  std::vector<PortLoads> loads;
  for (const CoflowMatrix& c : instance.coflows()) loads.emplace_back(c.demand());

  PortBound best;
  best.exact = zero || equal_weights;
  for (std::size_t port = 0; port < 2 * m; ++port) {
    std::vector<SingleMachineJob> jobs;
    Decimal idle_part;
    for (CoflowIndex k = 0; k < instance.size(); ++k) {
      const std::int64_t p = port < m ? loads[k].input_loads[port] : loads[k].output_loads[port - m];
      if (p == 0) {
        idle_part += instance[k].weight() * (instance[k].release() + loads[k].load);
      } else {
        jobs.push_back({p, instance[k].release(), instance[k].weight()});
      }
    }
    const Decimal value = idle_part + (zero ? wspt_value(std::move(jobs)) : preemptive_ratio_value(jobs));
    if (port == 0 || best.value < value) {
      best.value = value;
      best.port = port;
    }
  }
  return best;
}

}  // namespace coflow
