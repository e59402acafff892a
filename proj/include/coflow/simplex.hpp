#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coflow::lp {

enum class Sense { kMinimize, kMaximize };
enum class RowType { kLessEqual, kGreaterEqual, kEqual };

struct Entry {
  std::size_t row;
  double value;
};

// Linear program over nonnegative variables with <=, >= and = rows.
// Coefficients are stored column-wise.
class LpProblem {
 public:
  explicit LpProblem(Sense sense = Sense::kMinimize) : sense_(sense) {}

  std::size_t add_variable(double cost, std::string name = {}) {
    if (!std::isfinite(cost)) throw std::invalid_argument("non-finite objective coefficient");
    costs_.push_back(cost);
    columns_.emplace_back();
    column_names_.push_back(name.empty() ? "x" + std::to_string(costs_.size()) : std::move(name));
    return costs_.size() - 1;
  }

  std::size_t add_row(RowType type, double rhs, std::string name = {}) {
    if (!std::isfinite(rhs)) throw std::invalid_argument("non-finite right-hand side");
    row_types_.push_back(type);
    rhs_.push_back(rhs);
    row_names_.push_back(name.empty() ? "r" + std::to_string(rhs_.size()) : std::move(name));
    return rhs_.size() - 1;
  }

  // Coefficients must be added in increasing row order per column.
  void add_coefficient(std::size_t row, std::size_t column, double value) {
    if (row >= rhs_.size() || column >= costs_.size()) throw std::out_of_range("coefficient outside problem");
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite coefficient");
    if (value == 0.0) return;
    auto& col = columns_[column];
    if (!col.empty() && col.back().row >= row) throw std::invalid_argument("coefficients must be added in row order");
    col.push_back({row, value});
  }

  Sense sense() const { return sense_; }
  std::size_t rows() const { return rhs_.size(); }
  std::size_t columns() const { return costs_.size(); }
  double cost(std::size_t j) const { return costs_[j]; }
  double rhs(std::size_t r) const { return rhs_[r]; }
  RowType row_type(std::size_t r) const { return row_types_[r]; }
  std::span<const Entry> column(std::size_t j) const { return columns_[j]; }
  const std::string& column_name(std::size_t j) const { return column_names_[j]; }
  const std::string& row_name(std::size_t r) const { return row_names_[r]; }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  double objective_value(std::span<const double> x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < costs_.size(); ++j) v += costs_[j] * x[j];
    return v;
  }

  // Largest violation of any row or sign constraint by x.
  double max_violation(std::span<const double> x) const {
    std::vector<double> activity(rhs_.size(), 0.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      worst = std::max(worst, -x[j]);
      for (const Entry& e : columns_[j]) activity[e.row] += e.value * x[j];
    }
    for (std::size_t r = 0; r < rhs_.size(); ++r) {
      double v = activity[r] - rhs_[r];
      switch (row_types_[r]) {
        case RowType::kLessEqual: worst = std::max(worst, v); break;
        case RowType::kGreaterEqual: worst = std::max(worst, -v); break;
        case RowType::kEqual: worst = std::max(worst, std::abs(v)); break;
      }
    }
    return worst;
  }

 private:
  Sense sense_;
  std::vector<double> costs_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<std::string> column_names_;
  std::vector<RowType> row_types_;
  std::vector<double> rhs_;
  std::vector<std::string> row_names_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kStalled };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kStalled: return "stalled";
  }
  return "?";
}

struct SolverOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_streak = 32;
  std::size_t max_pivots = 0;  // 0: 50 * (rows + columns)
  std::size_t max_rows = 6000;
  std::size_t refactor_interval = 300;
};

struct LpResult {
  Status status = Status::kStalled;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x;
  std::size_t pivots = 0;
};

// Structural columns to start basic in place of the logical column of a
// row. Ignored unless the resulting basis is nonsingular and primal feasible.
struct StartingBasis {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> columns;
};

class ProblemTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace detail {

// Dense revised simplex on the row-scaled standard form
//   B x_B + N x_N = b,  x >= 0,
// with an explicit basis inverse refreshed every few pivots.
class RevisedSimplex {
 public:
  RevisedSimplex(const LpProblem& problem, const SolverOptions& options, const StartingBasis* start = nullptr)
      : options_(options) {
    rows_ = problem.rows();
    structural_ = problem.columns();
    if (rows_ > options_.max_rows) {
      throw ProblemTooLarge("LP has " + std::to_string(rows_) + " rows; the dense solver accepts at most " +
                            std::to_string(options_.max_rows));
    }
    // Row scaling by largest magnitude so that load rows and assignment rows are comparable.
    std::vector<double> scale(rows_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) {
      for (const Entry& e : problem.column(j)) scale[e.row] = std::max(scale[e.row], std::abs(e.value));
    }
    b_.resize(rows_);
    std::vector<double> sign(rows_, 1.0);
    std::vector<RowType> type(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (scale[r] == 0.0) scale[r] = 1.0;
      type[r] = problem.row_type(r);
      double rhs = problem.rhs(r) / scale[r];
      if (rhs < 0) {
        sign[r] = -1.0;
        rhs = -rhs;
        if (type[r] == RowType::kLessEqual) {
          type[r] = RowType::kGreaterEqual;
        } else if (type[r] == RowType::kGreaterEqual) {
          type[r] = RowType::kLessEqual;
        }
      }
      b_[r] = rhs;
      scale[r] = sign[r] / scale[r];
    }

    columns_.resize(structural_);
    cost_.assign(structural_, 0.0);
    double cost_scale = 0.0;
    for (std::size_t j = 0; j < structural_; ++j) {
      cost_scale = std::max(cost_scale, std::abs(problem.cost(j)));
    }
    if (cost_scale == 0.0) cost_scale = 1.0;
    const double direction = problem.sense() == Sense::kMaximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < structural_; ++j) {
      cost_[j] = direction * problem.cost(j) / cost_scale;
      for (const Entry& e : problem.column(j)) columns_[j].push_back({e.row, e.value * scale[e.row]});
    }

    // Logical columns: slack (+1) for <=, surplus (-1) plus artificial for >=, artificial for =.
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (type[r] == RowType::kLessEqual) {
        basis_[r] = add_logical(r, 1.0, false);
      } else {
        if (type[r] == RowType::kGreaterEqual) add_logical(r, -1.0, false);
        basis_[r] = add_logical(r, 1.0, true);
      }
    }
    inverse_.assign(rows_ * rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) inverse_[r * rows_ + r] = 1.0;
    x_basic_ = b_;
    crash_singletons();
    if (start != nullptr) try_start(*start);
    in_basis_.assign(columns_.size(), -1);
    for (std::size_t r = 0; r < rows_; ++r) in_basis_[basis_[r]] = static_cast<std::ptrdiff_t>(r);
    max_pivots_ = options_.max_pivots != 0 ? options_.max_pivots : 50 * (rows_ + columns_.size()) + 1000;
  }

  LpResult solve() {
    LpResult result;
    bool any_artificial = false;
    for (std::size_t r = 0; r < rows_; ++r) any_artificial = any_artificial || is_artificial(basis_[r]);
    if (any_artificial) {
      std::vector<double> phase1(columns_.size(), 0.0);
      for (std::size_t j = structural_; j < columns_.size(); ++j) {
        if (artificial_[j - structural_]) phase1[j] = 1.0;
      }
      Status s = iterate(phase1, /*phase_one=*/true);
      if (s == Status::kStalled) return finish(result, s);
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (is_artificial(basis_[r])) infeasibility += x_basic_[r];
      }
      if (infeasibility > options_.feasibility_tolerance) return finish(result, Status::kInfeasible);
      drive_out_artificials();
    }
    std::vector<double> phase2(columns_.size(), 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    return finish(result, iterate(phase2, /*phase_one=*/false));
  }

 private:
  std::size_t add_logical(std::size_t row, double value, bool artificial) {
    columns_.push_back({Entry{row, value}});
    artificial_.push_back(artificial);
    return columns_.size() - 1;
  }
  bool is_artificial(std::size_t j) const { return j >= structural_ && artificial_[j - structural_]; }

  void try_start(const StartingBasis& start) {
    if (start.rows.size() != start.columns.size()) throw std::invalid_argument("starting basis rows and columns differ in length");
    const std::vector<std::size_t> saved_basis = basis_;
    const std::vector<double> saved_inverse = inverse_;
    const std::vector<double> saved_x = x_basic_;
    for (std::size_t t = 0; t < start.rows.size(); ++t) {
      if (start.rows[t] >= rows_ || start.columns[t] >= structural_) throw std::out_of_range("starting basis entry out of range");
      basis_[start.rows[t]] = start.columns[t];
    }
    bool ok = true;
    try {
      refactor();
    } catch (const std::runtime_error&) {
      ok = false;
    }
    for (std::size_t r = 0; ok && r < rows_; ++r) ok = x_basic_[r] >= -options_.feasibility_tolerance;
    if (!ok) {
      basis_ = saved_basis;
      inverse_ = saved_inverse;
      x_basic_ = saved_x;
    }
  }

  // Rows that would start on an artificial take the cheapest structural
  // column whose only entry is a positive coefficient in that row. The basis
  // stays diagonal, so the start needs no factorization.
  void crash_singletons() {
    std::vector<std::size_t> pick(rows_, SIZE_MAX);
    for (std::size_t j = 0; j < structural_; ++j) {
      if (columns_[j].size() != 1 || columns_[j][0].value <= 0.0) continue;
      const std::size_t r = columns_[j][0].row;
      if (!is_artificial(basis_[r])) continue;
      if (pick[r] == SIZE_MAX || cost_[j] < cost_[pick[r]]) pick[r] = j;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (pick[r] == SIZE_MAX) continue;
      const double a = columns_[pick[r]][0].value;
      basis_[r] = pick[r];
      inverse_[r * rows_ + r] = 1.0 / a;
      x_basic_[r] = b_[r] / a;
    }
  }

  LpResult& finish(LpResult& result, Status status) {
    result.status = status;
    result.pivots = pivots_;
    if (status == Status::kOptimal) {
      result.x.assign(structural_, 0.0);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (basis_[r] < structural_) result.x[basis_[r]] = std::max(0.0, x_basic_[r]);
      }
    }
    return result;
  }

  // alpha = B^-1 a_j. The inverse is stored column-major: inverse_[k * rows_ + r] = (B^-1)_{r,k}.
  void ftran(std::size_t j, std::vector<double>& alpha) const {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (const Entry& e : columns_[j]) {
      const double v = e.value;
      const double* col = &inverse_[e.row * rows_];
      for (std::size_t r = 0; r < rows_; ++r) alpha[r] += col[r] * v;
    }
  }

  void refactor() {
    // Gauss-Jordan on the basis matrix with partial pivoting.
    std::vector<double> basis_matrix(rows_ * rows_, 0.0);
    for (std::size_t c = 0; c < rows_; ++c) {
      for (const Entry& e : columns_[basis_[c]]) basis_matrix[e.row * rows_ + c] = e.value;
    }
    std::vector<double>& inv = inverse_;
    std::fill(inv.begin(), inv.end(), 0.0);
    for (std::size_t r = 0; r < rows_; ++r) inv[r * rows_ + r] = 1.0;
    std::vector<std::size_t> perm(rows_);
    for (std::size_t c = 0; c < rows_; ++c) {
      std::size_t best = c;
      double best_val = std::abs(basis_matrix[c * rows_ + c]);
      for (std::size_t r = c + 1; r < rows_; ++r) {
        double v = std::abs(basis_matrix[r * rows_ + c]);
        if (v > best_val) {
          best_val = v;
          best = r;
        }
      }
      if (best_val < 1e-12) throw std::runtime_error("singular basis during refactorization");
      if (best != c) {
        for (std::size_t k = 0; k < rows_; ++k) {
          std::swap(basis_matrix[c * rows_ + k], basis_matrix[best * rows_ + k]);
          std::swap(inv[c * rows_ + k], inv[best * rows_ + k]);
        }
      }
      const double pivot = basis_matrix[c * rows_ + c];
      for (std::size_t k = 0; k < rows_; ++k) {
        basis_matrix[c * rows_ + k] /= pivot;
        inv[c * rows_ + k] /= pivot;
      }
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == c) continue;
        const double f = basis_matrix[r * rows_ + c];
        if (f == 0.0) continue;
        double* brow = &basis_matrix[r * rows_];
        const double* bpiv = &basis_matrix[c * rows_];
        double* irow = &inv[r * rows_];
        const double* ipiv = &inv[c * rows_];
        for (std::size_t k = 0; k < rows_; ++k) {
          brow[k] -= f * bpiv[k];
          irow[k] -= f * ipiv[k];
        }
      }
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < rows_; ++k) v += inv[r * rows_ + k] * b_[k];
      x_basic_[r] = v;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = r + 1; k < rows_; ++k) std::swap(inv[r * rows_ + k], inv[k * rows_ + r]);
    }
    since_refactor_ = 0;
  }

  Status iterate(const std::vector<double>& cost, bool phase_one) {
    std::vector<double> y(rows_), alpha(rows_), cb(rows_);
    std::size_t degenerate = 0;
    bool fresh = true;
    for (;;) {
      if (pivots_ >= max_pivots_) return Status::kStalled;
      if (since_refactor_ >= options_.refactor_interval) refactor();

      // y^T = c_B^T B^-1, recomputed after each refactorization and updated in between.
      if (since_refactor_ == 0 || fresh) {
        for (std::size_t r = 0; r < rows_; ++r) cb[r] = cost[basis_[r]];
        for (std::size_t k = 0; k < rows_; ++k) {
          const double* col = &inverse_[k * rows_];
          double v = 0.0;
          for (std::size_t r = 0; r < rows_; ++r) v += cb[r] * col[r];
          y[k] = v;
        }
        fresh = false;
      }

      const bool bland = degenerate >= options_.degenerate_streak;
      std::size_t entering = SIZE_MAX;
      double best = -options_.optimality_tolerance;
      double entering_cost = 0.0;
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (in_basis_[j] >= 0 || is_artificial(j)) continue;  // artificials never re-enter
        double d = cost[j];
        for (const Entry& e : columns_[j]) d -= y[e.row] * e.value;
        if (d < best) {
          entering = j;
          entering_cost = d;
          if (bland) break;
          best = d;
        }
      }
      if (entering == SIZE_MAX) return Status::kOptimal;

      ftran(entering, alpha);
      std::size_t leaving = SIZE_MAX;
      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = alpha[r];
        // Artificials stuck in the basis at zero must stay at zero.
        if (!phase_one && is_artificial(basis_[r]) && std::abs(a) > options_.pivot_tolerance) {
          if (theta > 0.0 || leaving == SIZE_MAX || basis_[r] < basis_[leaving]) {
            theta = 0.0;
            leaving = r;
          }
          continue;
        }
        if (a <= options_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, x_basic_[r]) / a;
        if (leaving == SIZE_MAX || ratio < theta - 1e-12) {
          theta = ratio;
          leaving = r;
        } else if (ratio <= theta + 1e-12) {
          const bool prefer = bland ? basis_[r] < basis_[leaving] : a > alpha[leaving];
          if (prefer) {
            theta = std::min(theta, ratio);
            leaving = r;
          }
        }
      }
      if (leaving == SIZE_MAX) return Status::kUnbounded;

      degenerate = theta <= 1e-12 ? degenerate + 1 : 0;
      const double step = entering_cost / alpha[leaving];
      for (std::size_t k = 0; k < rows_; ++k) y[k] += step * inverse_[k * rows_ + leaving];
      pivot(entering, leaving, alpha, theta);
    }
  }

  void pivot(std::size_t entering, std::size_t leaving, const std::vector<double>& alpha, double theta) {
    for (std::size_t r = 0; r < rows_; ++r) x_basic_[r] -= theta * alpha[r];
    x_basic_[leaving] = theta;
    const double pivot_value = alpha[leaving];
    for (std::size_t k = 0; k < rows_; ++k) {
      double* col = &inverse_[k * rows_];
      const double p = col[leaving] / pivot_value;
      if (p == 0.0) continue;
      for (std::size_t r = 0; r < rows_; ++r) col[r] -= alpha[r] * p;
      col[leaving] = p;
    }
    in_basis_[basis_[leaving]] = -1;
    basis_[leaving] = entering;
    in_basis_[entering] = static_cast<std::ptrdiff_t>(leaving);
    ++pivots_;
    ++since_refactor_;
  }

  // After phase one, swap zero-level artificials for structural or slack columns where possible.
  void drive_out_artificials() {
    std::vector<double> alpha(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (in_basis_[j] >= 0 || is_artificial(j)) continue;
        double v = 0.0;
        for (const Entry& e : columns_[j]) v += inverse_[e.row * rows_ + r] * e.value;
        if (std::abs(v) > 1e-7) {
          ftran(j, alpha);
          pivot(j, r, alpha, x_basic_[r] / alpha[r]);
          break;
        }
      }
    }
  }

  SolverOptions options_;
  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::vector<std::vector<Entry>> columns_;
  std::vector<bool> artificial_;  // indexed by column - structural_
  std::vector<double> cost_;
  std::vector<double> b_;
  std::vector<std::size_t> basis_;
  std::vector<std::ptrdiff_t> in_basis_;
  std::vector<double> inverse_;
  std::vector<double> x_basic_;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t max_pivots_ = 0;
};

}  // namespace detail

// Solves the LP to optimality, or reports infeasible / unbounded / stalled.
// Entering columns follow Dantzig's rule, falling back to Bland's rule during
// runs of degenerate pivots; ties always break on the lowest index.
inline LpResult solve_lp(const LpProblem& problem, const SolverOptions& options = {},
                         const StartingBasis* start = nullptr) {
  if (problem.columns() == 0) throw std::invalid_argument("LP needs at least one column");
  if (problem.rows() == 0) {
    // Every variable sits at its bound of zero unless that is unbounded.
    LpResult r;
    for (std::size_t j = 0; j < problem.columns(); ++j) {
      const double c = problem.sense() == Sense::kMaximize ? -problem.cost(j) : problem.cost(j);
      if (c < 0) {
        r.status = Status::kUnbounded;
        return r;
      }
    }
    r.status = Status::kOptimal;
    r.x.assign(problem.columns(), 0.0);
    r.objective = 0.0;
    return r;
  }
  detail::RevisedSimplex solver(problem, options, start);
  LpResult result = solver.solve();
  if (result.status == Status::kOptimal) result.objective = problem.objective_value(result.x);
  return result;
}

// Free-format MPS: NAME, ROWS, COLUMNS, RHS, BOUNDS, ENDATA. Columns appear in index order.
inline void write_mps(std::ostream& out, const LpProblem& problem, const std::string& name = "COFLOW") {
  out << std::setprecision(17);
  out << "NAME " << name << '\n';
  if (problem.sense() == Sense::kMaximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N obj\n";
  for (std::size_t r = 0; r < problem.rows(); ++r) {
    const char* t = problem.row_type(r) == RowType::kLessEqual ? "L" : problem.row_type(r) == RowType::kGreaterEqual ? "G" : "E";
    out << ' ' << t << ' ' << problem.row_name(r) << '\n';
  }
  out << "COLUMNS\n";
  for (std::size_t j = 0; j < problem.columns(); ++j) {
    if (problem.cost(j) != 0.0) out << "    " << problem.column_name(j) << " obj " << problem.cost(j) << '\n';
    for (const Entry& e : problem.column(j)) {
      out << "    " << problem.column_name(j) << ' ' << problem.row_name(e.row) << ' ' << e.value << '\n';
    }
  }
  out << "RHS\n";
  for (std::size_t r = 0; r < problem.rows(); ++r) {
    if (problem.rhs(r) != 0.0) out << "    rhs " << problem.row_name(r) << ' ' << problem.rhs(r) << '\n';
  }
  out << "BOUNDS\n";
  for (std::size_t j = 0; j < problem.columns(); ++j) out << " LO bnd " << problem.column_name(j) << " 0\n";
  out << "ENDATA\n";
}

}  // namespace coflow::lp
