#pragma once

// Independent reference computations used by the tests. None of these share
// code paths with the library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "coflow/core.hpp"
#include "coflow/simplex.hpp"

namespace oracle {

using coflow::CoflowMatrix;
using coflow::DemandMatrix;
using coflow::Instance;

// Plain mt19937_64 based generators for test corpora.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline DemandMatrix random_matrix(TestRng& rng, std::size_t m, std::int64_t max_value, double density) {
  DemandMatrix d(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (rng.chance(density)) d(i, j) = rng.between(1, max_value);
    }
  }
  if (d.is_zero()) d(rng.between(0, static_cast<std::int64_t>(m) - 1), rng.between(0, static_cast<std::int64_t>(m) - 1)) = 1;
  return d;
}

inline Instance random_instance(TestRng& rng, std::size_t m, std::size_t n, std::int64_t max_value, double density,
                                std::int64_t max_gap = 0, bool random_weights = false) {
  std::vector<CoflowMatrix> coflows;
  std::int64_t release = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (max_gap > 0) release += rng.between(0, max_gap);
    const auto weight = random_weights ? coflow::Decimal::from_units(rng.between(1, 40) * 250000)
                                       : coflow::Decimal::from_integer(1);
    coflows.emplace_back(k + 1, random_matrix(rng, m, max_value, density), weight, release);
  }
  return Instance(m, std::move(coflows), "test");
}

// Exact minimum of sum w_k C_k over all slot-by-slot schedules, by memoized
// search over residual demand. Only for very small instances.
class OptimalSchedule {
 public:
  explicit OptimalSchedule(const Instance& instance) : instance_(instance), m_(instance.m()), n_(instance.size()) {
    for (const auto& c : instance.coflows()) horizon_ = std::max(horizon_, c.release());
  }

  // Objective in Decimal units (weight units times slots).
  std::int64_t value() {
    std::vector<std::int64_t> state;
    for (const auto& c : instance_.coflows()) {
      for (std::int64_t v : c.demand().cells()) state.push_back(v);
    }
    return solve(state, 0);
  }

 private:
  std::int64_t solve(const std::vector<std::int64_t>& state, std::int64_t t) {
    std::int64_t pending = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (!finished(state, k)) pending += instance_[k].weight().units();
    }
    if (pending == 0) return 0;
    const std::int64_t key_t = std::min(t, horizon_);
    auto key = std::make_pair(key_t, state);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> next = state;
    std::vector<bool> out_used(m_, false);
    bool served_any = false;
    enumerate(0, next, out_used, t, served_any, best);
    best += pending;
    memo_.emplace(std::move(key), best);
    return best;
  }

  void enumerate(std::size_t input, std::vector<std::int64_t>& next, std::vector<bool>& out_used, std::int64_t t,
                 bool served_any, std::int64_t& best) {
    if (input == m_) {
      if (!served_any && t >= horizon_) return;  // idling forever never helps once everything is released
      best = std::min(best, solve(next, t + 1));
      return;
    }
    enumerate(input + 1, next, out_used, t, served_any, best);
    for (std::size_t j = 0; j < m_; ++j) {
      if (out_used[j]) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        if (instance_[k].release() > t) continue;
        std::int64_t& cell = next[(k * m_ + input) * m_ + j];
        if (cell == 0) continue;
        --cell;
        out_used[j] = true;
        enumerate(input + 1, next, out_used, t, true, best);
        out_used[j] = false;
        ++cell;
      }
    }
  }

  bool finished(const std::vector<std::int64_t>& state, std::size_t k) const {
    for (std::size_t c = 0; c < m_ * m_; ++c) {
      if (state[k * m_ * m_ + c] != 0) return false;
    }
    return true;
  }

  const Instance& instance_;
  std::size_t m_, n_;
  std::int64_t horizon_ = 0;
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, std::int64_t> memo_;
};

// Brute-force LP over a bounded polyhedron: every basic solution is found by
// choosing `columns` tight constraints among rows and x_j = 0.
struct VertexResult {
  bool feasible = false;
  double objective = std::numeric_limits<double>::infinity();
};

inline VertexResult enumerate_vertices(const coflow::lp::LpProblem& lp) {
  const std::size_t nvar = lp.columns();
  const std::size_t nrow = lp.rows();
  std::vector<std::vector<double>> a(nrow, std::vector<double>(nvar, 0.0));
  for (std::size_t j = 0; j < nvar; ++j) {
    for (const auto& e : lp.column(j)) a[e.row][j] = e.value;
  }
  // Hyperplanes: rows then variable bounds.
  const std::size_t planes = nrow + nvar;
  auto plane = [&](std::size_t p, std::vector<double>& coef, double& rhs) {
    coef.assign(nvar, 0.0);
    if (p < nrow) {
      coef = a[p];
      rhs = lp.rhs(p);
    } else {
      coef[p - nrow] = 1.0;
      rhs = 0.0;
    }
  };
  auto feasible = [&](const std::vector<double>& x) {
    for (double v : x) {
      if (v < -1e-7) return false;
    }
    for (std::size_t r = 0; r < nrow; ++r) {
      double s = 0.0;
      for (std::size_t j = 0; j < nvar; ++j) s += a[r][j] * x[j];
      const double b = lp.rhs(r);
      switch (lp.row_type(r)) {
        case coflow::lp::RowType::kLessEqual:
          if (s > b + 1e-7) return false;
          break;
        case coflow::lp::RowType::kGreaterEqual:
          if (s < b - 1e-7) return false;
          break;
        case coflow::lp::RowType::kEqual:
          if (std::abs(s - b) > 1e-7) return false;
          break;
      }
    }
    return true;
  };
  VertexResult best;
  std::vector<std::size_t> pick(nvar);
  std::vector<bool> mask(planes, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(nvar, planes)), true);
  std::vector<double> coef;
  do {
    std::vector<std::vector<double>> m(nvar, std::vector<double>(nvar + 1));
    std::size_t row = 0;
    for (std::size_t p = 0; p < planes; ++p) {
      if (!mask[p]) continue;
      double rhs = 0.0;
      plane(p, coef, rhs);
      for (std::size_t j = 0; j < nvar; ++j) m[row][j] = coef[j];
      m[row][nvar] = rhs;
      ++row;
    }
    bool singular = false;
    for (std::size_t c = 0; c < nvar && !singular; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < nvar; ++r) {
        if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
      }
      if (std::abs(m[piv][c]) < 1e-10) {
        singular = true;
        break;
      }
      std::swap(m[c], m[piv]);
      for (std::size_t r = 0; r < nvar; ++r) {
        if (r == c) continue;
        const double f = m[r][c] / m[c][c];
        for (std::size_t k = c; k <= nvar; ++k) m[r][k] -= f * m[c][k];
      }
    }
    if (singular) continue;
    std::vector<double> x(nvar);
    for (std::size_t j = 0; j < nvar; ++j) x[j] = m[j][nvar] / m[j][j];
    if (!feasible(x)) continue;
    const double value = lp.objective_value(x);
    const bool better = lp.sense() == coflow::lp::Sense::kMinimize ? value < best.objective : value > best.objective;
    if (!best.feasible || better) best.objective = value;
    best.feasible = true;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

// All permutations of 0..m-1 in lexicographic order.
inline std::vector<std::vector<std::size_t>> permutations(std::size_t m) {
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

}  // namespace oracle
