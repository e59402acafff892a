#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace coflow {

struct AugmentedMatrix {
  DemandMatrix base;
  DemandMatrix augmented;  // equal row and column sums, >= base componentwise
  std::int64_t rho = 0;

  bool balanced() const {
    for (Port p = 0; p < augmented.size(); ++p) {
      if (augmented.row_sum(p) != rho || augmented.col_sum(p) != rho) return false;
    }
    return true;
  }
};

namespace detail {

// Pads d in place until every row and column sums to rho: repeatedly add
// min(row deficit, column deficit) at (lightest row, lightest column),
// lowest index on ties.
inline void fill_to_load(DemandMatrix& d, std::int64_t rho) {
  const std::size_t m = d.size();
  std::vector<std::int64_t> rows(m), cols(m);
  for (Port p = 0; p < m; ++p) {
    rows[p] = d.row_sum(p);
    cols[p] = d.col_sum(p);
  }
  for (;;) {
    const auto i = static_cast<Port>(std::min_element(rows.begin(), rows.end()) - rows.begin());
    const auto j = static_cast<Port>(std::min_element(cols.begin(), cols.end()) - cols.begin());
    if (std::min(rows[i], cols[j]) >= rho) break;
    const std::int64_t p = std::min(rho - rows[i], rho - cols[j]);
    d(i, j) += p;
    rows[i] += p;
    cols[j] += p;
  }
}

}  // namespace detail

inline AugmentedMatrix augment(const DemandMatrix& d) {
  if (d.is_zero()) throw std::invalid_argument("cannot augment an all-zero matrix");
  AugmentedMatrix a{d, d, d.load()};
  detail::fill_to_load(a.augmented, a.rho);
  return a;
}

// Spreads the deficit proportionally, d'_ij = floor(d_ij + p_i q_j / Delta),
// then finishes with the standard padding loop.
inline AugmentedMatrix balanced_augment(const DemandMatrix& d) {
  if (d.is_zero()) throw std::invalid_argument("cannot augment an all-zero matrix");
  const std::size_t m = d.size();
  AugmentedMatrix a{d, d, d.load()};
  const std::int64_t delta = static_cast<std::int64_t>(m) * a.rho - d.total();
  if (delta > 0) {
    std::vector<std::int64_t> row_gap(m), col_gap(m);
    for (Port p = 0; p < m; ++p) {
      row_gap[p] = a.rho - d.row_sum(p);
      col_gap[p] = a.rho - d.col_sum(p);
    }
    for (Port i = 0; i < m; ++i) {
      for (Port j = 0; j < m; ++j) a.augmented(i, j) = d(i, j) + row_gap[i] * col_gap[j] / delta;
    }
  }
  detail::fill_to_load(a.augmented, a.rho);
  return a;
}

struct BvnTerm {
  std::vector<Port> permutation;  // input i is matched to output permutation[i]
  std::int64_t duration = 0;
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;

  std::int64_t total_duration() const {
    std::int64_t s = 0;
    for (const auto& t : terms) s += t.duration;
    return s;
  }

  DemandMatrix reconstruct(std::size_t m) const {
    DemandMatrix d(m);
    for (const auto& t : terms) {
      for (Port i = 0; i < m; ++i) d(i, t.permutation[i]) += t.duration;
    }
    return d;
  }
};

class MatchingFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

// Kuhn-style augmenting paths over the support of `weights`, scanning
// vertices in ascending order. Keeps the existing matching and repairs it.
class SupportMatcher {
 public:
  explicit SupportMatcher(std::size_t m) : m_(m), match_left_(m, kFree), match_right_(m, kFree), seen_(m, 0) {}

  void drop_dead_edges(const DemandMatrix& weights) {
    for (Port i = 0; i < m_; ++i) {
      if (match_left_[i] != kFree && weights(i, match_left_[i]) == 0) {
        match_right_[match_left_[i]] = kFree;
        match_left_[i] = kFree;
      }
    }
  }

  bool complete(const DemandMatrix& weights) {
    for (Port i = 0; i < m_; ++i) {
      if (match_left_[i] != kFree) continue;
      ++stamp_;
      if (!augment_from(i, weights)) return false;
    }
    return true;
  }

  const std::vector<Port>& left() const { return match_left_; }

 private:
  static constexpr Port kFree = std::numeric_limits<Port>::max();

  bool augment_from(Port u, const DemandMatrix& weights) {
    for (Port v = 0; v < m_; ++v) {
      if (weights(u, v) == 0 || seen_[v] == stamp_) continue;
      seen_[v] = stamp_;
      if (match_right_[v] == kFree || augment_from(match_right_[v], weights)) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    return false;
  }

  std::size_t m_;
  std::vector<Port> match_left_, match_right_;
  std::vector<std::uint64_t> seen_;
  std::uint64_t stamp_ = 0;
};

}  // namespace detail

// Perfect matching on the support graph (edge (i, j) iff weights(i, j) > 0),
// or nullopt if none exists.
inline std::optional<std::vector<Port>> perfect_matching(const DemandMatrix& weights) {
  detail::SupportMatcher matcher(weights.size());
  if (!matcher.complete(weights)) return std::nullopt;
  return matcher.left();
}

// Peels permutation matrices off an augmented matrix until it is zero. Each
// term lasts for the smallest matched entry.
inline BvnDecomposition bvn_decompose(const AugmentedMatrix& a) {
  if (!a.balanced()) throw std::invalid_argument("BvN decomposition needs equal row and column sums");
  const std::size_t m = a.augmented.size();
  DemandMatrix rest = a.augmented;
  BvnDecomposition result;
  detail::SupportMatcher matcher(m);
  std::int64_t left = a.rho;
  while (left > 0) {
    matcher.drop_dead_edges(rest);
    if (!matcher.complete(rest)) {
      throw MatchingFailure("support graph has no perfect matching; augmentation produced unequal sums");
    }
    BvnTerm term{matcher.left(), std::numeric_limits<std::int64_t>::max()};
    for (Port i = 0; i < m; ++i) term.duration = std::min(term.duration, rest(i, term.permutation[i]));
    for (Port i = 0; i < m; ++i) rest(i, term.permutation[i]) -= term.duration;
    left -= term.duration;
    result.terms.push_back(std::move(term));
  }
  return result;
}

}  // namespace coflow
