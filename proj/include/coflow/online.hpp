#pragma once

#include <algorithm>
#include <vector>

#include "core.hpp"
#include "ordering.hpp"
#include "schedule.hpp"

namespace coflow {

struct OnlineStats {
  std::size_t epochs = 0;    // release epochs at which the order was rebuilt
  std::size_t preemptions = 0;  // epochs that cut an unfinished decomposition short
};

// Coflows revealed at release. At each release epoch the arrived, unfinished
// coflows are re-ordered by `rule` on their residual demand (releases reset
// to 0) and served with balanced backfilling until the next epoch. FIFO keeps
// release order and never interrupts, which is exactly the offline case (c).
inline ScheduleTrace run_online(const Instance& instance, Rule rule, const lp::SolverOptions& options = {},
                                OnlineStats* stats = nullptr) {
  if (rule == Rule::kFifo) {
    if (stats) *stats = {1, 0};
    return run_schedule(instance, order_fifo(instance), ScheduleCase::kC);
  }
  std::vector<Slot> epochs;
  for (const CoflowMatrix& c : instance.coflows()) epochs.push_back(c.release());
  std::sort(epochs.begin(), epochs.end());
  epochs.erase(std::unique(epochs.begin(), epochs.end()), epochs.end());

  OnlineStats local;
  Simulator sim(instance);
  for (std::size_t e = 0; e < epochs.size(); ++e) {
    sim.idle_until(epochs[e]);
    const SystemState& state = sim.state();
    std::vector<CoflowIndex> arrived;
    std::vector<CoflowMatrix> residual;
    for (CoflowIndex k = 0; k < instance.size(); ++k) {
      if (instance[k].release() > state.clock || state.finished(k)) continue;
      arrived.push_back(k);
      residual.emplace_back(arrived.size(), state.remaining[k], instance[k].weight(), 0);
    }
    if (arrived.empty()) continue;
    const OrderingResult local_order = compute_ordering(Instance(instance.m(), std::move(residual)), rule, options);
    std::vector<CoflowIndex> order;
    order.reserve(arrived.size());
    for (CoflowIndex p : local_order.permutation) order.push_back(arrived[p]);

    sim.set_order(order);
    const Slot deadline = e + 1 < epochs.size() ? epochs[e + 1] : kNoDeadline;
    ++local.epochs;
    if (!sim.run(singleton_ends(order.size()), true, true, deadline)) ++local.preemptions;
  }
  if (stats) *stats = local;
  return sim.take_trace();
}

}  // namespace coflow
