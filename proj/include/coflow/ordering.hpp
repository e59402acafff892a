#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "core.hpp"
#include "lp_relaxation.hpp"
#include "ordering_result.hpp"

namespace coflow {

// FIFO: release time ascending, index order among equal releases.
inline OrderingResult order_fifo(const Instance& instance) {
  std::vector<double> scores(instance.size());
  const bool zero = instance.zero_release();
  for (CoflowIndex k = 0; k < instance.size(); ++k) {
    scores[k] = zero ? static_cast<double>(k) : static_cast<double>(instance[k].release());
  }
  return order_by_scores(Rule::kFifo, std::move(scores));
}

// STPT: total demand plus release.
inline OrderingResult order_stpt(const Instance& instance) {
  std::vector<double> scores(instance.size());
  for (CoflowIndex k = 0; k < instance.size(); ++k) {
    scores[k] = static_cast<double>(instance[k].demand().total() + instance[k].release());
  }
  return order_by_scores(Rule::kStpt, std::move(scores));
}

// SMPT: load rho plus release.
inline OrderingResult order_smpt(const Instance& instance) {
  std::vector<double> scores(instance.size());
  for (CoflowIndex k = 0; k < instance.size(); ++k) {
    scores[k] = static_cast<double>(instance[k].load() + instance[k].release());
  }
  return order_by_scores(Rule::kSmpt, std::move(scores));
}

// SMCT: every input and output is an independent machine. On each machine the
// coflows run non-preemptively in order of (port load + release); the score is
// the latest completion over all 2m machines. A coflow with no load on a
// machine completes there at its release.
inline OrderingResult order_smct(const Instance& instance) {
  const std::size_t n = instance.size();
  const std::size_t m = instance.m();
  std::vector<PortLoads> loads;
  loads.reserve(n);
  for (const CoflowMatrix& c : instance.coflows()) loads.emplace_back(c.demand());

  std::vector<double> scores(n, 0.0);
  std::vector<CoflowIndex> sequence(n);
  for (std::size_t machine = 0; machine < 2 * m; ++machine) {
    auto processing = [&](CoflowIndex k) {
      return machine < m ? loads[k].input_loads[machine] : loads[k].output_loads[machine - m];
    };
    sequence = identity_order(n);
    std::stable_sort(sequence.begin(), sequence.end(), [&](CoflowIndex a, CoflowIndex b) {
      return processing(a) + instance[a].release() < processing(b) + instance[b].release();
    });
    std::int64_t clock = 0;
    for (CoflowIndex k : sequence) {
      const std::int64_t p = processing(k);
      std::int64_t done = instance[k].release();
      if (p > 0) {
        clock = std::max(clock, instance[k].release()) + p;
        done = clock;
      }
      scores[k] = std::max(scores[k], static_cast<double>(done));
    }
  }
  return order_by_scores(Rule::kSmct, std::move(scores));
}

// ECT: greedy sequence by earliest estimated completion.
// Zero releases: the estimate is the bottleneck max_port(prefix load + candidate load).
// General releases: coflows run back to back without backfilling; a candidate
// must be released by the current finish time (or, if none is, any unscheduled
// coflow) and finishes at max(finish, r_k) + rho_k.
inline OrderingResult order_ect(const Instance& instance) {
  const std::size_t n = instance.size();
  const std::size_t m = instance.m();
  OrderingResult result;
  result.rule = Rule::kEct;
  result.scores.assign(n, 0.0);
  std::vector<bool> taken(n, false);

  if (instance.zero_release()) {
    std::vector<PortLoads> loads;
    loads.reserve(n);
    for (const CoflowMatrix& c : instance.coflows()) loads.emplace_back(c.demand());
    std::vector<std::int64_t> in(m, 0), out(m, 0);
    for (std::size_t step = 0; step < n; ++step) {
      CoflowIndex best = n;
      std::int64_t best_estimate = std::numeric_limits<std::int64_t>::max();
      for (CoflowIndex k = 0; k < n; ++k) {
        if (taken[k]) continue;
        std::int64_t estimate = 0;
        for (Port p = 0; p < m; ++p) {
          estimate = std::max({estimate, in[p] + loads[k].input_loads[p], out[p] + loads[k].output_loads[p]});
        }
        if (estimate < best_estimate) {
          best_estimate = estimate;
          best = k;
        }
      }
      taken[best] = true;
      for (Port p = 0; p < m; ++p) {
        in[p] += loads[best].input_loads[p];
        out[p] += loads[best].output_loads[p];
      }
      result.permutation.push_back(best);
      result.scores[best] = static_cast<double>(best_estimate);
    }
    return result;
  }

  std::vector<std::int64_t> rho(n);
  for (CoflowIndex k = 0; k < n; ++k) rho[k] = instance[k].load();
  std::int64_t finish = 0;
  for (std::size_t step = 0; step < n; ++step) {
    bool any_released = false;
    for (CoflowIndex k = 0; k < n; ++k) any_released = any_released || (!taken[k] && instance[k].release() <= finish);
    CoflowIndex best = n;
    std::int64_t best_estimate = std::numeric_limits<std::int64_t>::max();
    for (CoflowIndex k = 0; k < n; ++k) {
      if (taken[k] || (any_released && instance[k].release() > finish)) continue;
      const std::int64_t estimate = std::max(finish, instance[k].release()) + rho[k];
      if (estimate < best_estimate) {
        best_estimate = estimate;
        best = k;
      }
    }
    taken[best] = true;
    finish = best_estimate;
    result.permutation.push_back(best);
    result.scores[best] = static_cast<double>(best_estimate);
  }
  return result;
}

inline OrderingResult compute_ordering(const Instance& instance, Rule rule, const lp::SolverOptions& options = {}) {
  switch (rule) {
    case Rule::kFifo: return order_fifo(instance);
    case Rule::kStpt: return order_stpt(instance);
    case Rule::kSmpt: return order_smpt(instance);
    case Rule::kSmct: return order_smct(instance);
    case Rule::kEct: return order_ect(instance);
    case Rule::kLp: return lp_ordering(instance, options);
  }
  throw std::invalid_argument("unknown rule");
}

}  // namespace coflow
