#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decimal.hpp"

namespace coflow {

// Internally ports and coflows are 0-indexed; external formats use 1..m and 1..n.
using Port = std::size_t;
using CoflowIndex = std::size_t;
using Slot = std::int64_t;

// Dense m x m matrix of nonnegative integer data units, row-major.
class DemandMatrix {
 public:
  DemandMatrix() = default;
  explicit DemandMatrix(std::size_t m) : m_(m), cells_(m * m, 0) {}
  DemandMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : m_(rows.size()) {
    cells_.reserve(m_ * m_);
    for (const auto& row : rows) {
      if (row.size() != m_) throw std::invalid_argument("demand matrix must be square");
      cells_.insert(cells_.end(), row.begin(), row.end());
    }
  }

  std::size_t size() const { return m_; }
  std::int64_t operator()(Port i, Port j) const { return cells_[i * m_ + j]; }
  std::int64_t& operator()(Port i, Port j) { return cells_[i * m_ + j]; }
  std::span<const std::int64_t> cells() const { return cells_; }

  std::int64_t row_sum(Port i) const {
    return std::accumulate(cells_.begin() + static_cast<std::ptrdiff_t>(i * m_),
                           cells_.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_), std::int64_t{0});
  }
  std::int64_t col_sum(Port j) const {
    std::int64_t s = 0;
    for (Port i = 0; i < m_; ++i) s += cells_[i * m_ + j];
    return s;
  }
  std::int64_t total() const { return std::accumulate(cells_.begin(), cells_.end(), std::int64_t{0}); }
  bool is_zero() const {
    return std::all_of(cells_.begin(), cells_.end(), [](std::int64_t v) { return v == 0; });
  }
  std::size_t nonzeros() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](std::int64_t v) { return v != 0; }));
  }

  // Load rho: the largest row or column sum.
  std::int64_t load() const {
    std::int64_t rho = 0;
    for (Port p = 0; p < m_; ++p) rho = std::max({rho, row_sum(p), col_sum(p)});
    return rho;
  }

  bool dominates(const DemandMatrix& other) const {
    if (other.m_ != m_) return false;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      if (cells_[c] < other.cells_[c]) return false;
    }
    return true;
  }

  DemandMatrix& operator+=(const DemandMatrix& other) {
    if (other.m_ != m_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t c = 0; c < cells_.size(); ++c) cells_[c] += other.cells_[c];
    return *this;
  }

  friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::int64_t> cells_;
};

struct PortLoads {
  std::vector<std::int64_t> input_loads;   // eta_i, row sums
  std::vector<std::int64_t> output_loads;  // theta_j, column sums
  std::int64_t load = 0;

  explicit PortLoads(const DemandMatrix& d) : input_loads(d.size()), output_loads(d.size()) {
    for (Port i = 0; i < d.size(); ++i) {
      for (Port j = 0; j < d.size(); ++j) {
        input_loads[i] += d(i, j);
        output_loads[j] += d(i, j);
      }
    }
    for (Port p = 0; p < d.size(); ++p) load = std::max({load, input_loads[p], output_loads[p]});
  }
};

class CoflowMatrix {
 public:
  CoflowMatrix(std::size_t id, DemandMatrix demand, Decimal weight = Decimal::from_integer(1), std::int64_t release = 0)
      : id_(id), demand_(std::move(demand)), weight_(weight), release_(release) {
    if (id_ == 0) throw std::invalid_argument("coflow ids start at 1");
    if (demand_.size() == 0) throw std::invalid_argument("coflow " + std::to_string(id_) + ": empty matrix");
    for (std::int64_t v : demand_.cells()) {
      if (v < 0) throw std::invalid_argument("coflow " + std::to_string(id_) + ": negative demand");
    }
    if (demand_.is_zero()) throw std::invalid_argument("coflow " + std::to_string(id_) + ": all-zero demand");
    if (weight_.units() <= 0) throw std::invalid_argument("coflow " + std::to_string(id_) + ": weight must be positive");
    if (release_ < 0) throw std::invalid_argument("coflow " + std::to_string(id_) + ": negative release");
  }

  std::size_t id() const { return id_; }
  const DemandMatrix& demand() const { return demand_; }
  Decimal weight() const { return weight_; }
  std::int64_t release() const { return release_; }
  std::size_t m() const { return demand_.size(); }
  std::int64_t load() const { return demand_.load(); }
  PortLoads port_loads() const { return PortLoads(demand_); }

  CoflowMatrix with_release(std::int64_t release) const { return {id_, demand_, weight_, release}; }
  CoflowMatrix with_weight(Decimal weight) const { return {id_, demand_, weight, release_}; }
  CoflowMatrix with_demand(DemandMatrix demand) const { return {id_, std::move(demand), weight_, release_}; }

 private:
  std::size_t id_;
  DemandMatrix demand_;
  Decimal weight_;
  std::int64_t release_;
};

class Instance {
 public:
  Instance(std::size_t m, std::vector<CoflowMatrix> coflows, std::string label = {})
      : m_(m), coflows_(std::move(coflows)), label_(std::move(label)) {
    if (m_ == 0) throw std::invalid_argument("network size must be at least 1");
    for (std::size_t k = 0; k < coflows_.size(); ++k) {
      if (coflows_[k].m() != m_) {
        throw std::invalid_argument("coflow " + std::to_string(coflows_[k].id()) + " is not " + std::to_string(m_) +
                                    "x" + std::to_string(m_));
      }
      if (coflows_[k].id() != k + 1) {
        throw std::invalid_argument("coflow ids must be dense 1..n in order (position " + std::to_string(k + 1) +
                                    " holds id " + std::to_string(coflows_[k].id()) + ")");
      }
    }
  }

  std::size_t m() const { return m_; }
  std::size_t size() const { return coflows_.size(); }
  bool empty() const { return coflows_.empty(); }
  const CoflowMatrix& operator[](CoflowIndex k) const { return coflows_[k]; }
  const std::vector<CoflowMatrix>& coflows() const { return coflows_; }
  const std::string& label() const { return label_; }

  std::int64_t max_release() const {
    std::int64_t r = 0;
    for (const auto& c : coflows_) r = std::max(r, c.release());
    return r;
  }
  std::int64_t total_demand() const {
    std::int64_t s = 0;
    for (const auto& c : coflows_) s += c.demand().total();
    return s;
  }
  bool zero_release() const {
    return std::all_of(coflows_.begin(), coflows_.end(), [](const CoflowMatrix& c) { return c.release() == 0; });
  }

  Instance relabeled(std::string label) const { return {m_, coflows_, std::move(label)}; }

 private:
  std::size_t m_;
  std::vector<CoflowMatrix> coflows_;
  std::string label_;
};

struct Transfer {
  std::uint16_t input;
  std::uint16_t output;
  std::uint32_t coflow;
  friend bool operator==(const Transfer&, const Transfer&) = default;
};

// Per-slot record of unit transfers. Slots are appended in time order;
// a slot may be empty (idle network).
class ScheduleTrace {
 public:
  ScheduleTrace() : offsets_{0} {}

  std::size_t slot_count() const { return offsets_.size() - 1; }
  bool empty() const { return transfers_.empty(); }
  std::size_t transfer_count() const { return transfers_.size(); }

  std::span<const Transfer> slot(std::size_t t) const {
    return std::span<const Transfer>(transfers_).subspan(offsets_[t], offsets_[t + 1] - offsets_[t]);
  }

  // Adds a transfer to the slot currently being filled (index slot_count()).
  void push(Port input, Port output, CoflowIndex coflow) {
    transfers_.push_back(Transfer{static_cast<std::uint16_t>(input), static_cast<std::uint16_t>(output),
                                  static_cast<std::uint32_t>(coflow)});
  }
  void close_slot() { offsets_.push_back(transfers_.size()); }
  void add_slot(std::span<const Transfer> transfers) {
    transfers_.insert(transfers_.end(), transfers.begin(), transfers.end());
    close_slot();
  }
  // Appends idle slots so that slot_count() == t.
  void pad_to(std::size_t t) {
    while (slot_count() < t) close_slot();
  }

  friend bool operator==(const ScheduleTrace&, const ScheduleTrace&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Transfer> transfers_;
};

class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Violation {
  Slot slot;  // -1 for whole-trace count mismatches
  Transfer transfer;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

class InvalidScheduleError : public std::runtime_error {
 public:
  explicit InvalidScheduleError(ValidationReport report)
      : std::runtime_error(summary(report)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  static std::string summary(const ValidationReport& r) {
    std::string s = "invalid schedule: " + std::to_string(r.violations.size()) + " violation(s)";
    if (!r.violations.empty()) s += "; first: " + r.violations.front().message;
    return s;
  }
  ValidationReport report_;
};

// Checks the matching, release and exact-service constraints of a trace.
// Out-of-range ports or coflow indices raise StructuralError instead.
inline ValidationReport validate_schedule(const Instance& instance, const ScheduleTrace& trace) {
  const std::size_t m = instance.m();
  const std::size_t n = instance.size();
  ValidationReport report;
  std::vector<std::int64_t> served(n * m * m, 0);
  std::vector<std::size_t> input_stamp(m, SIZE_MAX), output_stamp(m, SIZE_MAX);

  for (std::size_t t = 0; t < trace.slot_count(); ++t) {
    for (const Transfer& x : trace.slot(t)) {
      if (x.input >= m || x.output >= m) {
        throw StructuralError("slot " + std::to_string(t) + ": port (" + std::to_string(x.input + 1) + "," +
                              std::to_string(x.output + 1) + ") outside a " + std::to_string(m) + "x" +
                              std::to_string(m) + " network");
      }
      if (x.coflow >= n) {
        throw StructuralError("slot " + std::to_string(t) + ": unknown coflow " + std::to_string(x.coflow + 1));
      }
      const auto slot = static_cast<Slot>(t);
      if (input_stamp[x.input] == t) {
        report.violations.push_back(
            {slot, x, "input " + std::to_string(x.input + 1) + " used twice in slot " + std::to_string(t)});
      }
      if (output_stamp[x.output] == t) {
        report.violations.push_back(
            {slot, x, "output " + std::to_string(x.output + 1) + " used twice in slot " + std::to_string(t)});
      }
      input_stamp[x.input] = t;
      output_stamp[x.output] = t;
      if (slot < instance[x.coflow].release()) {
        report.violations.push_back({slot, x,
                                     "coflow " + std::to_string(x.coflow + 1) + " served before release in slot " +
                                         std::to_string(t)});
      }
      ++served[(x.coflow * m + x.input) * m + x.output];
    }
  }
  for (CoflowIndex k = 0; k < n; ++k) {
    const DemandMatrix& d = instance[k].demand();
    for (Port i = 0; i < m; ++i) {
      for (Port j = 0; j < m; ++j) {
        const std::int64_t got = served[(k * m + i) * m + j];
        if (got != d(i, j)) {
          report.violations.push_back(
              {-1,
               Transfer{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j), static_cast<std::uint32_t>(k)},
               "coflow " + std::to_string(k + 1) + " flow (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                   ") served " + std::to_string(got) + " of " + std::to_string(d(i, j)) + " units"});
        }
      }
    }
  }
  return report;
}

struct CompletionReport {
  std::vector<std::int64_t> completions;  // C_k in elapsed slots
  Decimal objective;                      // sum_k w_k C_k
  std::int64_t makespan = 0;
};

// Completion times from a trace that must validate against the instance.
inline CompletionReport completion_report(const Instance& instance, const ScheduleTrace& trace) {
  ValidationReport verdict = validate_schedule(instance, trace);
  if (!verdict.ok()) throw InvalidScheduleError(std::move(verdict));
  CompletionReport report;
  report.completions.assign(instance.size(), 0);
  for (std::size_t t = 0; t < trace.slot_count(); ++t) {
    for (const Transfer& x : trace.slot(t)) report.completions[x.coflow] = static_cast<std::int64_t>(t) + 1;
  }
  for (CoflowIndex k = 0; k < instance.size(); ++k) {
    report.objective += instance[k].weight() * report.completions[k];
    report.makespan = std::max(report.makespan, report.completions[k]);
  }
  return report;
}

// Objective from externally computed completion times.
inline Decimal weighted_completion(const Instance& instance, std::span<const std::int64_t> completions) {
  Decimal sum;
  for (CoflowIndex k = 0; k < instance.size(); ++k) sum += instance[k].weight() * completions[k];
  return sum;
}

struct CumulativeLoads {
  std::int64_t max_input = 0;   // I_k
  std::int64_t max_output = 0;  // J_k
  std::int64_t max_total = 0;   // V_k
};

// I_k, J_k, V_k for every prefix of `order`.
inline std::vector<CumulativeLoads> prefix_loads(const Instance& instance, std::span<const CoflowIndex> order) {
  const std::size_t m = instance.m();
  std::vector<std::int64_t> in(m, 0), out(m, 0);
  std::vector<CumulativeLoads> result;
  result.reserve(order.size());
  for (CoflowIndex k : order) {
    const DemandMatrix& d = instance[k].demand();
    for (Port i = 0; i < m; ++i) {
      for (Port j = 0; j < m; ++j) {
        in[i] += d(i, j);
        out[j] += d(i, j);
      }
    }
    CumulativeLoads c;
    c.max_input = *std::max_element(in.begin(), in.end());
    c.max_output = *std::max_element(out.begin(), out.end());
    c.max_total = std::max(c.max_input, c.max_output);
    result.push_back(c);
  }
  return result;
}

inline std::vector<CoflowIndex> identity_order(std::size_t n) {
  std::vector<CoflowIndex> order(n);
  std::iota(order.begin(), order.end(), CoflowIndex{0});
  return order;
}

// Loads of the first `prefix_length` coflows in instance order (1 <= prefix_length <= n).
inline CumulativeLoads cumulative_loads(const Instance& instance, std::size_t prefix_length) {
  if (prefix_length < 1 || prefix_length > instance.size()) {
    throw std::out_of_range("prefix length " + std::to_string(prefix_length) + " outside 1.." +
                            std::to_string(instance.size()));
  }
  auto order = identity_order(prefix_length);
  return prefix_loads(instance, order).back();
}

}  // namespace coflow
