#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "core.hpp"
#include "instances.hpp"
#include "online.hpp"
#include "ordering.hpp"
#include "schedule.hpp"

namespace coflow {

// Runs fn(0..count-1) on up to `jobs` threads. Results must be written to
// per-index slots by fn, so the outcome does not depend on scheduling. The
// first exception is rethrown after all workers stop.
inline void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < std::min(jobs, count); ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Objective of a trace that is validated first; throws InvalidScheduleError otherwise.
inline Decimal validated_objective(const Instance& instance, const ScheduleTrace& trace) {
  return completion_report(instance, trace).objective;
}

struct GridEvaluation {
  std::vector<Rule> rules;
  std::vector<ScheduleCase> cases;
  std::vector<std::vector<Decimal>> objective;      // [rule][case]
  std::vector<double> ordering_seconds;             // [rule]
  std::vector<std::vector<double>> schedule_seconds;  // [rule][case]

  Decimal at(Rule rule, ScheduleCase c) const {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      for (std::size_t k = 0; k < cases.size(); ++k) {
        if (rules[r] == rule && cases[k] == c) return objective[r][k];
      }
    }
    throw std::out_of_range("variant not evaluated");
  }
};

inline GridEvaluation evaluate_grid(const Instance& instance, std::span<const Rule> rules,
                                    std::span<const ScheduleCase> cases, const lp::SolverOptions& options = {}) {
  GridEvaluation g;
  g.rules.assign(rules.begin(), rules.end());
  g.cases.assign(cases.begin(), cases.end());
  for (Rule rule : rules) {
    Stopwatch order_clock;
    const OrderingResult ordering = compute_ordering(instance, rule, options);
    g.ordering_seconds.push_back(order_clock.seconds());
    std::vector<Decimal> row;
    std::vector<double> times;
    for (ScheduleCase c : cases) {
      Stopwatch schedule_clock;
      const ScheduleTrace trace = run_schedule(instance, ordering, c);
      times.push_back(schedule_clock.seconds());
      row.push_back(validated_objective(instance, trace));
    }
    g.objective.push_back(std::move(row));
    g.schedule_seconds.push_back(std::move(times));
  }
  return g;
}

inline double ratio(Decimal numerator, Decimal denominator) { return numerator.to_double() / denominator.to_double(); }

// Synthetic corpus layout: positions 0-4
// sparse, 5-9 dense, the rest uniform; m = 16 and 160 coflows by default.
struct CorpusSpec {
  std::size_t m = 16;
  std::size_t n = 160;
  std::size_t count = 30;
  std::uint64_t seed = 1;
  bool releases = false;  // gaps uniform on [gap_lo, gap_hi] when set
  std::int64_t gap_lo = kDefaultGapLo;
  std::int64_t gap_hi = kDefaultGapHi;
};

inline Density corpus_density(std::size_t index) {
  if (index < 5) return Density::kSparse;
  if (index < 10) return Density::kDense;
  return Density::kUniform;
}

inline Instance corpus_instance(const CorpusSpec& spec, std::size_t index) {
  const std::uint64_t seed = spec.seed * 1000003u + index;
  Instance base = generate_synthetic(spec.m, spec.n, corpus_density(index), seed);
  if (!spec.releases) return base;
  return with_release_times(base, spec.gap_lo, spec.gap_hi, seed ^ 0x9e3779b97f4a7c15ULL);
}

// Average objective ratio of each rule to the anchor rule under one case,
// over `samples` release draws with gaps on [0, upper].
struct SweepPoint {
  std::int64_t upper = 0;
  std::vector<double> mean_ratio;  // per rule
};

inline std::vector<SweepPoint> release_sweep(std::size_t m, std::size_t n, Density density, std::span<const std::int64_t> uppers,
                                             std::size_t samples, std::span<const Rule> rules, Rule anchor,
                                             ScheduleCase schedule_case, std::uint64_t seed, std::size_t jobs = 1,
                                             const lp::SolverOptions& options = {}) {
  std::vector<SweepPoint> points;
  for (std::int64_t upper : uppers) {
    std::vector<std::vector<double>> per_sample(samples);
    parallel_for(samples, jobs, [&](std::size_t s) {
      const std::uint64_t sample_seed = seed * 7919u + s;
      const Instance inst = with_release_times(generate_synthetic(m, n, density, sample_seed), upper,
                                               sample_seed ^ (static_cast<std::uint64_t>(upper) << 20));
      const Decimal base = validated_objective(inst, run_schedule(inst, compute_ordering(inst, anchor, options), schedule_case));
      for (Rule rule : rules) {
        const Decimal obj = rule == anchor ? base
                                           : validated_objective(inst, run_schedule(inst, compute_ordering(inst, rule, options),
                                                                                    schedule_case));
        per_sample[s].push_back(ratio(obj, base));
      }
    });
    SweepPoint p;
    p.upper = upper;
    p.mean_ratio.assign(rules.size(), 0.0);
    for (const auto& row : per_sample) {
      for (std::size_t r = 0; r < rules.size(); ++r) p.mean_ratio[r] += row[r] / static_cast<double>(samples);
    }
    points.push_back(std::move(p));
  }
  return points;
}

inline const std::vector<std::int64_t>& default_sweep_uppers() {
  static const std::vector<std::int64_t> uppers = {0, 25, 50, 100, 200, 400, 800, 1600};
  return uppers;
}

}  // namespace coflow
