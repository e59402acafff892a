#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bvn.hpp"
#include "core.hpp"
#include "grouping.hpp"
#include "ordering_result.hpp"

namespace coflow {

enum class ScheduleCase { kA, kB, kC, kD, kE };

inline constexpr std::array<ScheduleCase, 5> kAllCases = {ScheduleCase::kA, ScheduleCase::kB, ScheduleCase::kC,
                                                          ScheduleCase::kD, ScheduleCase::kE};

struct CaseTraits {
  bool backfill = false;
  bool balanced = false;
  bool grouped = false;
};

inline CaseTraits case_traits(ScheduleCase c) {
  switch (c) {
    case ScheduleCase::kA: return {false, false, false};
    case ScheduleCase::kB: return {true, false, false};
    case ScheduleCase::kC: return {true, true, false};
    case ScheduleCase::kD: return {true, false, true};
    case ScheduleCase::kE: return {true, true, true};
  }
  throw std::invalid_argument("invalid schedule case");
}

inline char case_name(ScheduleCase c) { return static_cast<char>('a' + static_cast<int>(c)); }

inline ScheduleCase parse_case(std::string_view text) {
  if (text.size() == 1) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
    if (c >= 'a' && c <= 'e') return static_cast<ScheduleCase>(c - 'a');
  }
  throw std::invalid_argument("unknown schedule case '" + std::string(text) + "' (expected a|b|c|d|e)");
}

inline constexpr Slot kNoDeadline = std::numeric_limits<Slot>::max();

// Residual demands and the partial trace of a simulation in progress.
struct SystemState {
  Slot clock = 0;
  std::vector<DemandMatrix> remaining;  // per coflow index
  ScheduleTrace trace;

  bool finished(CoflowIndex k) const { return remaining[k].is_zero(); }
};

// Slot-by-slot executor shared by the offline cases and the online loop.
// Coflows listed in the active order are ranked by position; scheduling units
// are consecutive rank ranges run one after another, each augmented and
// decomposed from the residual demand of its members at the moment it starts.
class Simulator {
 public:
  explicit Simulator(const Instance& instance) : instance_(instance), m_(instance.m()), cells_(m_ * m_) {
    state_.remaining.reserve(instance.size());
    for (const CoflowMatrix& c : instance.coflows()) state_.remaining.push_back(c.demand());
    for (const CoflowMatrix& c : instance.coflows()) releases_.push_back(c.release());
    std::sort(releases_.begin(), releases_.end());
    releases_.erase(std::unique(releases_.begin(), releases_.end()), releases_.end());
  }

  const SystemState& state() const { return state_; }
  ScheduleTrace take_trace() { return std::move(state_.trace); }

  // Only coflows in `order` are eligible for service until the next call.
  void set_order(std::span<const CoflowIndex> order) {
    order_.assign(order.begin(), order.end());
    for (auto& cell : cells_) cell.clear();
    for (std::size_t r = 0; r < order_.size(); ++r) {
      const DemandMatrix& d = state_.remaining[order_[r]];
      for (Port i = 0; i < m_; ++i) {
        for (Port j = 0; j < m_; ++j) {
          if (d(i, j) > 0) cells_[i * m_ + j].insert(cells_[i * m_ + j].end(), static_cast<std::uint32_t>(r));
        }
      }
    }
  }

  void idle_until(Slot t) {
    if (t > state_.clock) {
      state_.clock = t;
      state_.trace.pad_to(static_cast<std::size_t>(t));
    }
  }

  // Runs the units ending at the given positions of the active order. Returns
  // false if `deadline` cut the run short; the residual state stays consistent.
  bool run(std::span<const std::size_t> unit_ends, bool backfill, bool balanced, Slot deadline = kNoDeadline) {
    std::size_t begin = 0;
    for (std::size_t end : unit_ends) {
      if (!run_unit(begin, end, backfill, balanced, deadline)) return false;
      begin = end;
    }
    return true;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  bool run_unit(std::size_t begin, std::size_t end, bool backfill, bool balanced, Slot deadline) {
    Slot start = state_.clock;
    DemandMatrix residual(m_);
    for (std::size_t r = begin; r < end; ++r) {
      start = std::max(start, instance_[order_[r]].release());
      residual += state_.remaining[order_[r]];
    }
    if (residual.is_zero()) return true;
    if (start >= deadline) {
      idle_until(deadline);
      return false;
    }
    idle_until(start);
    const AugmentedMatrix a = balanced ? balanced_augment(residual) : augment(residual);
    const BvnDecomposition bvn = bvn_decompose(a);

    std::size_t next_release = static_cast<std::size_t>(
        std::upper_bound(releases_.begin(), releases_.end(), state_.clock) - releases_.begin());
    std::vector<std::uint32_t> pick(m_, kNone);
    std::vector<char> valid(m_, 0);
    for (const BvnTerm& term : bvn.terms) {
      std::fill(valid.begin(), valid.end(), 0);
      for (std::int64_t s = 0; s < term.duration; ++s) {
        if (state_.clock >= deadline) return false;
        if (next_release < releases_.size() && releases_[next_release] <= state_.clock) {
          while (next_release < releases_.size() && releases_[next_release] <= state_.clock) ++next_release;
          std::fill(valid.begin(), valid.end(), 0);
        }
        for (Port i = 0; i < m_; ++i) {
          const Port j = term.permutation[i];
          if (!valid[i]) {
            pick[i] = find(i, j, end, backfill);
            valid[i] = 1;
          }
          if (pick[i] == kNone) continue;
          const CoflowIndex k = order_[pick[i]];
          std::int64_t& left = state_.remaining[k](i, j);
          --left;
          state_.trace.push(i, j, k);
          if (left == 0) {
            cells_[i * m_ + j].erase(pick[i]);
            valid[i] = 0;
          }
        }
        state_.trace.close_slot();
        ++state_.clock;
      }
    }
    return true;
  }

  // Earliest-ranked coflow that may use cell (i, j) now: a member of the
  // current unit, else (when backfilling) a released coflow ranked after it.
  std::uint32_t find(Port i, Port j, std::size_t unit_end, bool backfill) const {
    for (std::uint32_t r : cells_[i * m_ + j]) {
      if (r < unit_end) return r;
      if (!backfill) return kNone;
      if (instance_[order_[r]].release() <= state_.clock) return r;
    }
    return kNone;
  }

  const Instance& instance_;
  std::size_t m_;
  SystemState state_;
  std::vector<CoflowIndex> order_;
  std::vector<std::set<std::uint32_t>> cells_;  // ranks with remaining demand per cell
  std::vector<Slot> releases_;                  // distinct, ascending
};

inline std::vector<std::size_t> singleton_ends(std::size_t n) {
  std::vector<std::size_t> ends(n);
  for (std::size_t k = 0; k < n; ++k) ends[k] = k + 1;
  return ends;
}

inline ScheduleTrace run_schedule(const Instance& instance, const OrderingResult& ordering, ScheduleCase schedule_case) {
  if (!ordering.is_permutation_of(instance.size())) throw std::invalid_argument("ordering does not match instance");
  const CaseTraits traits = case_traits(schedule_case);
  const std::vector<std::size_t> ends =
      traits.grouped ? group(instance, ordering).ends : singleton_ends(instance.size());
  Simulator sim(instance);
  sim.set_order(ordering.permutation);
  sim.run(ends, traits.backfill, traits.balanced);
  return sim.take_trace();
}

}  // namespace coflow
