#pragma once

#include <algorithm>
#include <vector>

#include "core.hpp"
#include "lp_relaxation.hpp"
#include "ordering_result.hpp"

namespace coflow {

struct GroupPartition {
  std::vector<std::vector<CoflowIndex>> groups;  // ascending indices within a group
  std::vector<std::size_t> thresholds;           // interval index s_u of each group
  std::vector<std::size_t> ends;                 // exclusive end position of each group in the ordering

  std::size_t size() const { return groups.size(); }
};

// Groups consecutive coflows of the ordering whose cumulative bottleneck load
// V falls into the same geometric interval.
inline GroupPartition group(const Instance& instance, const OrderingResult& ordering) {
  if (!ordering.is_permutation_of(instance.size())) throw std::invalid_argument("ordering does not match instance");
  GroupPartition partition;
  if (instance.empty()) return partition;
  const IntervalGrid grid = IntervalGrid::for_instance(instance);
  const std::vector<CumulativeLoads> loads = prefix_loads(instance, ordering.permutation);
  for (std::size_t pos = 0; pos < ordering.permutation.size(); ++pos) {
    const std::size_t l = grid.interval_of(loads[pos].max_total);
    if (partition.thresholds.empty() || partition.thresholds.back() != l) {
      partition.thresholds.push_back(l);
      partition.groups.emplace_back();
      partition.ends.push_back(pos);
    }
    partition.groups.back().push_back(ordering.permutation[pos]);
    partition.ends.back() = pos + 1;
  }
  for (auto& g : partition.groups) std::sort(g.begin(), g.end());
  return partition;
}

}  // namespace coflow
