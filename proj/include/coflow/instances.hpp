#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace coflow {

// mt19937_64 is fully specified by the standard; the bounded draws below are
// done by hand because std::uniform_int_distribution is not, and instances
// must be identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer on [lo, hi], unbiased by rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(size) - 1)); }

 private:
  std::mt19937_64 engine_;
};

enum class Density { kSparse, kDense, kUniform };

inline std::string_view density_name(Density d) {
  switch (d) {
    case Density::kSparse: return "sparse";
    case Density::kDense: return "dense";
    case Density::kUniform: return "uniform";
  }
  return "?";
}

inline Density parse_density(std::string_view text) {
  if (text == "sparse") return Density::kSparse;
  if (text == "dense") return Density::kDense;
  if (text == "uniform") return Density::kUniform;
  throw std::invalid_argument("unknown density '" + std::string(text) + "' (expected sparse|dense|uniform)");
}

inline constexpr std::int64_t kMaxFlowSize = 100;

// Each coflow has u nonzero flows on distinct cells: u = m (sparse), m^2
// (dense) or uniform on {m..m^2}; each flow size is uniform on {1..100}.
inline Instance generate_synthetic(std::size_t m, std::size_t n, Density density, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  Rng rng(seed);
  const std::size_t cells = m * m;
  std::vector<std::size_t> pool(cells);
  std::vector<CoflowMatrix> coflows;
  coflows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t u = density == Density::kSparse ? m : cells;
    if (density == Density::kUniform) u = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(m), static_cast<std::int64_t>(cells)));
    for (std::size_t c = 0; c < cells; ++c) pool[c] = c;
    DemandMatrix d(m);
    for (std::size_t c = 0; c < u; ++c) {
      std::swap(pool[c], pool[c + rng.index(cells - c)]);
      d(pool[c] / m, pool[c] % m) = rng.uniform(1, kMaxFlowSize);
    }
    coflows.emplace_back(k + 1, std::move(d));
  }
  return Instance(m, std::move(coflows),
                  "synthetic m=" + std::to_string(m) + " n=" + std::to_string(n) + " density=" +
                      std::string(density_name(density)) + " seed=" + std::to_string(seed));
}

// r_k = g_1 + ... + g_k with gaps g uniform on [lo, hi].
inline Instance with_release_times(const Instance& instance, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("release gap range must satisfy 0 <= lo <= hi");
  Rng rng(seed);
  std::vector<CoflowMatrix> coflows;
  std::int64_t clock = 0;
  for (const CoflowMatrix& c : instance.coflows()) {
    clock += rng.uniform(lo, hi);
    coflows.push_back(c.with_release(clock));
  }
  return Instance(instance.m(), std::move(coflows),
                  instance.label() + " gaps=[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
}

// Gaps uniform on [0, upper]; upper = 0 gives all-zero releases.
inline Instance with_release_times(const Instance& instance, std::int64_t upper, std::uint64_t seed) {
  return with_release_times(instance, 0, upper, seed);
}

inline constexpr std::int64_t kDefaultGapLo = 1;
inline constexpr std::int64_t kDefaultGapHi = 100;

// Each coflow collapses onto the diagonal: D'_ii = row sum i.
inline Instance diagonalize(const Instance& instance) {
  std::vector<CoflowMatrix> coflows;
  for (const CoflowMatrix& c : instance.coflows()) {
    DemandMatrix d(instance.m());
    for (Port i = 0; i < instance.m(); ++i) d(i, i) = c.demand().row_sum(i);
    coflows.push_back(c.with_demand(std::move(d)));
  }
  return Instance(instance.m(), std::move(coflows), instance.label() + " diagonal");
}

// Chooses (i*, j*) given the rows and columns that still have a deficit.
using CellPicker = std::function<std::pair<Port, Port>(const std::vector<Port>& rows, const std::vector<Port>& cols)>;

inline DemandMatrix spread_matrix(const DemandMatrix& diagonal, const CellPicker& pick) {
  const std::size_t m = diagonal.size();
  std::vector<std::int64_t> row_left(m), col_left(m);
  for (Port p = 0; p < m; ++p) {
    for (Port q = 0; q < m; ++q) {
      if (p != q && diagonal(p, q) != 0) throw std::invalid_argument("spread_diagonal needs diagonal coflows");
    }
    row_left[p] = col_left[p] = diagonal(p, p);
  }
  DemandMatrix d(m);
  std::vector<Port> rows, cols;
  for (;;) {
    rows.clear();
    cols.clear();
    for (Port p = 0; p < m; ++p) {
      if (row_left[p] > 0) rows.push_back(p);
      if (col_left[p] > 0) cols.push_back(p);
    }
    if (rows.empty()) break;
    const auto [i, j] = pick(rows, cols);
    const std::int64_t p = std::min(row_left[i], col_left[j]);
    d(i, j) += p;
    row_left[i] -= p;
    col_left[j] -= p;
  }
  return d;
}

inline Instance spread_diagonal(const Instance& diagonal, const CellPicker& pick) {
  std::vector<CoflowMatrix> coflows;
  for (const CoflowMatrix& c : diagonal.coflows()) coflows.push_back(c.with_demand(spread_matrix(c.demand(), pick)));
  return Instance(diagonal.m(), std::move(coflows), diagonal.label() + " spread");
}

inline Instance spread_diagonal(const Instance& diagonal, std::uint64_t seed) {
  Rng rng(seed);
  return spread_diagonal(diagonal, [&rng](const std::vector<Port>& rows, const std::vector<Port>& cols) {
    const Port i = rows[rng.index(rows.size())];
    const Port j = cols[rng.index(cols.size())];
    return std::pair{i, j};
  });
}

namespace detail {

inline Instance build_family(std::size_t m, std::vector<std::pair<DemandMatrix, std::size_t>> blocks, std::string label) {
  std::vector<CoflowMatrix> coflows;
  for (auto& [d, count] : blocks) {
    for (std::size_t c = 0; c < count; ++c) coflows.emplace_back(coflows.size() + 1, d);
  }
  return Instance(m, std::move(coflows), std::move(label));
}

inline std::size_t scaled_count(double a, std::size_t n) {
  if (!(a >= 0.0)) throw std::invalid_argument("family parameter a must be nonnegative");
  return static_cast<std::size_t>(std::floor(a * static_cast<double>(n)));
}

}  // namespace detail

// m = 2: n x [[10,0],[0,0]], n x [[0,0],[0,10]], floor(a n) x [[9,0],[0,9]].
// m > 2: for each output j, n coflows with d_ij = 10 for every input i, plus
// floor(a n) coflows with d_ij = 9 everywhere.
inline Instance example1_family(std::size_t m, std::size_t n, double a) {
  if (m < 2) throw std::invalid_argument("example 1 needs m >= 2");
  std::vector<std::pair<DemandMatrix, std::size_t>> blocks;
  const std::string label = "example1 m=" + std::to_string(m) + " n=" + std::to_string(n) + " a=" + std::to_string(a);
  if (m == 2) {
    blocks.push_back({DemandMatrix{{10, 0}, {0, 0}}, n});
    blocks.push_back({DemandMatrix{{0, 0}, {0, 10}}, n});
    blocks.push_back({DemandMatrix{{9, 0}, {0, 9}}, detail::scaled_count(a, n)});
    return detail::build_family(m, std::move(blocks), label);
  }
  for (Port j = 0; j < m; ++j) {
    DemandMatrix d(m);
    for (Port i = 0; i < m; ++i) d(i, j) = 10;
    blocks.push_back({std::move(d), n});
  }
  DemandMatrix nines(m);
  for (Port i = 0; i < m; ++i) {
    for (Port j = 0; j < m; ++j) nines(i, j) = 9;
  }
  blocks.push_back({std::move(nines), detail::scaled_count(a, n)});
  return detail::build_family(m, std::move(blocks), label);
}

// For i = 2..m, n coflows with d_11 = 1 and d_ii = 10; floor(a n) coflows
// whose only flow is d_11 = 10. m = 2 gives n x [[1,0],[0,10]] and
// floor(a n) x [[10,0],[0,0]].
inline Instance example2_family(std::size_t m, std::size_t n, double a) {
  if (m < 2) throw std::invalid_argument("example 2 needs m >= 2");
  std::vector<std::pair<DemandMatrix, std::size_t>> blocks;
  for (Port i = 1; i < m; ++i) {
    DemandMatrix d(m);
    d(0, 0) = 1;
    d(i, i) = 10;
    blocks.push_back({std::move(d), n});
  }
  DemandMatrix single(m);
  single(0, 0) = 10;
  blocks.push_back({std::move(single), detail::scaled_count(a, n)});
  return detail::build_family(m, std::move(blocks),
                              "example2 m=" + std::to_string(m) + " n=" + std::to_string(n) + " a=" + std::to_string(a));
}

inline double example1_limit_ratio(double m, double a) { return (a * a + 2 * m * a + m) / (a * a + 2 * a + m); }
inline double example2_limit_ratio(double m, double a) { return (a * a + 2 * (m - 1) * a) / (a * a + m - 1); }

}  // namespace coflow
