#include <gtest/gtest.h>

#include <sstream>

#include "coflow/simplex.hpp"
#include "oracles.hpp"

using namespace coflow::lp;

TEST(Simplex, MaximizeSingleBound) {
  LpProblem p(Sense::kMaximize);
  const auto x = p.add_variable(1.0, "x");
  const auto r = p.add_row(RowType::kLessEqual, 5.0, "cap");
  p.add_coefficient(r, x, 1.0);
  const LpResult res = solve_lp(p);
  ASSERT_EQ(res.status, Status::kOptimal);
  EXPECT_NEAR(res.x[0], 5.0, 1e-9);
  EXPECT_NEAR(res.objective, 5.0, 1e-9);
}

TEST(Simplex, ReportsInfeasible) {
  LpProblem p;
  const auto x = p.add_variable(1.0);
  const auto a = p.add_row(RowType::kLessEqual, 1.0);
  const auto b = p.add_row(RowType::kGreaterEqual, 2.0);
  p.add_coefficient(a, x, 1.0);
  p.add_coefficient(b, x, 1.0);
  EXPECT_EQ(solve_lp(p).status, Status::kInfeasible);
}

TEST(Simplex, ReportsUnbounded) {
  LpProblem p(Sense::kMaximize);
  const auto x = p.add_variable(1.0);
  const auto y = p.add_variable(0.0);
  const auto r = p.add_row(RowType::kLessEqual, 1.0);
  p.add_coefficient(r, x, 1.0);
  p.add_coefficient(r, y, -1.0);
  EXPECT_EQ(solve_lp(p).status, Status::kUnbounded);
}

TEST(Simplex, DuplicateRowsDoNotChangeOptimum) {
  auto build = [](bool duplicate) {
    LpProblem p;
    const auto x = p.add_variable(-1.0);
    const auto y = p.add_variable(-2.0);
    std::vector<std::size_t> rows{p.add_row(RowType::kLessEqual, 4.0)};
    if (duplicate) rows.push_back(p.add_row(RowType::kLessEqual, 4.0));
    const auto cap = p.add_row(RowType::kLessEqual, 3.0);
    for (auto r : rows) p.add_coefficient(r, x, 1.0);
    p.add_coefficient(cap, x, 1.0);
    for (auto r : rows) p.add_coefficient(r, y, 1.0);
    return p;
  };
  const LpResult single = solve_lp(build(false));
  const LpResult twice = solve_lp(build(true));
  ASSERT_EQ(single.status, Status::kOptimal);
  ASSERT_EQ(twice.status, Status::kOptimal);
  EXPECT_NEAR(single.objective, -8.0, 1e-9);
  EXPECT_NEAR(twice.objective, single.objective, 1e-9);
}

TEST(Simplex, EqualityRowsNeedPhaseOne) {
  LpProblem p;
  const auto x = p.add_variable(1.0);
  const auto y = p.add_variable(3.0);
  const auto sum = p.add_row(RowType::kEqual, 10.0);
  const auto floor_y = p.add_row(RowType::kGreaterEqual, 2.0);
  const auto cap_x = p.add_row(RowType::kLessEqual, 6.0);
  p.add_coefficient(sum, x, 1.0);
  p.add_coefficient(cap_x, x, 1.0);
  p.add_coefficient(sum, y, 1.0);
  p.add_coefficient(floor_y, y, 1.0);
  const LpResult r = solve_lp(p);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.x[0], 6.0, 1e-9);
  EXPECT_NEAR(r.x[1], 4.0, 1e-9);
  EXPECT_LE(p.max_violation(r.x), 1e-9);
}

TEST(Simplex, RejectsEmptyProblem) {
  LpProblem p;
  EXPECT_THROW(solve_lp(p), std::invalid_argument);
}

// Random bounded LPs against brute-force vertex enumeration.
class SimplexVsVertices : public ::testing::TestWithParam<int> {};

TEST_P(SimplexVsVertices, MatchesBruteForce) {
  oracle::TestRng rng(1000 + GetParam());
  const std::size_t nvar = static_cast<std::size_t>(rng.between(2, 4));
  const std::size_t nrow = static_cast<std::size_t>(rng.between(2, 5));
  LpProblem p(rng.chance(0.5) ? Sense::kMinimize : Sense::kMaximize);
  for (std::size_t j = 0; j < nvar; ++j) p.add_variable(static_cast<double>(rng.between(-5, 5)));
  std::vector<std::vector<double>> a(nrow, std::vector<double>(nvar));
  for (std::size_t r = 0; r < nrow; ++r) {
    const int kind = static_cast<int>(rng.between(0, 4));
    const RowType type = kind <= 2 ? RowType::kLessEqual : (kind == 3 ? RowType::kGreaterEqual : RowType::kEqual);
    p.add_row(type, static_cast<double>(rng.between(type == RowType::kLessEqual ? 1 : 0, 12)));
    for (std::size_t j = 0; j < nvar; ++j) a[r][j] = static_cast<double>(rng.between(-2, 4));
  }
  // Box row keeps every instance bounded.
  const auto box = p.add_row(RowType::kLessEqual, 20.0);
  for (std::size_t j = 0; j < nvar; ++j) {
    for (std::size_t r = 0; r < nrow; ++r) {
      if (a[r][j] != 0.0) p.add_coefficient(r, j, a[r][j]);
    }
    p.add_coefficient(box, j, 1.0);
  }
  const oracle::VertexResult truth = oracle::enumerate_vertices(p);
  const LpResult got = solve_lp(p);
  if (!truth.feasible) {
    EXPECT_EQ(got.status, Status::kInfeasible);
    return;
  }
  ASSERT_EQ(got.status, Status::kOptimal);
  EXPECT_NEAR(got.objective, truth.objective, 1e-7);
  EXPECT_LE(p.max_violation(got.x), 1e-7);
}

INSTANTIATE_TEST_SUITE_P(Random, SimplexVsVertices, ::testing::Range(0, 150));

TEST(Simplex, DeterministicAcrossRuns) {
  oracle::TestRng rng(5);
  LpProblem p;
  for (int j = 0; j < 30; ++j) p.add_variable(static_cast<double>(rng.between(1, 9)));
  for (int r = 0; r < 12; ++r) p.add_row(RowType::kGreaterEqual, static_cast<double>(rng.between(1, 20)));
  for (std::size_t j = 0; j < 30; ++j) {
    for (std::size_t r = 0; r < 12; ++r) {
      if (rng.chance(0.4)) p.add_coefficient(r, j, static_cast<double>(rng.between(1, 5)));
    }
  }
  const LpResult a = solve_lp(p);
  const LpResult b = solve_lp(p);
  ASSERT_EQ(a.status, Status::kOptimal);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.pivots, b.pivots);
}

TEST(Simplex, StartingBasisDoesNotChangeOptimum) {
  // min x + y, x + y >= 3, x <= 2; slack-feasible start from column x.
  LpProblem p;
  const auto x = p.add_variable(1.0);
  const auto y = p.add_variable(2.0);
  const auto need = p.add_row(RowType::kGreaterEqual, 3.0);
  const auto cap = p.add_row(RowType::kLessEqual, 2.0);
  p.add_coefficient(need, x, 1.0);
  p.add_coefficient(cap, x, 1.0);
  p.add_coefficient(need, y, 1.0);
  StartingBasis start{{need}, {y}};
  const LpResult cold = solve_lp(p);
  const LpResult warm = solve_lp(p, {}, &start);
  ASSERT_EQ(cold.status, Status::kOptimal);
  ASSERT_EQ(warm.status, Status::kOptimal);
  EXPECT_NEAR(cold.objective, 4.0, 1e-9);
  EXPECT_NEAR(warm.objective, 4.0, 1e-9);
}

TEST(Simplex, WritesMps) {
  LpProblem p;
  const auto x = p.add_variable(2.0, "x_1");
  const auto r = p.add_row(RowType::kEqual, 1.0, "assign_1");
  p.add_coefficient(r, x, 1.0);
  std::ostringstream out;
  write_mps(out, p, "tiny");
  const std::string s = out.str();
  EXPECT_NE(s.find("NAME"), std::string::npos);
  EXPECT_NE(s.find("ROWS"), std::string::npos);
  EXPECT_NE(s.find("COLUMNS"), std::string::npos);
  EXPECT_NE(s.find("RHS"), std::string::npos);
  EXPECT_NE(s.find("x_1"), std::string::npos);
  EXPECT_NE(s.find("assign_1"), std::string::npos);
  EXPECT_NE(s.find("ENDATA"), std::string::npos);
}
