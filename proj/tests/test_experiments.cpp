#include <gtest/gtest.h>

#include <atomic>

#include "coflow/coflow.hpp"
#include "oracles.hpp"

using namespace coflow;

TEST(ParallelFor, CoversEveryIndexOnce) {
  for (std::size_t jobs : {1u, 2u, 8u}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, jobs, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, RethrowsWorkerFailure) {
  EXPECT_THROW(parallel_for(50, 4, [](std::size_t i) {
                 if (i == 17) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Grid, AnchorIsOneAndCellsValidated) {
  const Instance inst = generate_synthetic(4, 12, Density::kUniform, 8);
  const GridEvaluation g = evaluate_grid(inst, kAllRules, kAllCases);
  ASSERT_EQ(g.objective.size(), kAllRules.size());
  EXPECT_EQ(ratio(g.at(Rule::kLp, ScheduleCase::kC), g.at(Rule::kLp, ScheduleCase::kC)), 1.0);
  for (std::size_t r = 0; r < kAllRules.size(); ++r) {
    for (std::size_t c = 0; c < kAllCases.size(); ++c) {
      const Decimal direct =
          completion_report(inst, run_schedule(inst, compute_ordering(inst, kAllRules[r]), kAllCases[c])).objective;
      EXPECT_EQ(g.objective[r][c], direct);
    }
  }
}

TEST(Grid, MissingVariantThrows) {
  const Instance inst = generate_synthetic(3, 5, Density::kSparse, 1);
  const std::array<Rule, 1> rules{Rule::kFifo};
  const std::array<ScheduleCase, 1> cases{ScheduleCase::kA};
  const GridEvaluation g = evaluate_grid(inst, rules, cases);
  EXPECT_THROW(g.at(Rule::kLp, ScheduleCase::kA), std::out_of_range);
}

TEST(Corpus, LayoutAndDeterminism) {
  CorpusSpec spec;
  spec.m = 4;
  spec.n = 6;
  EXPECT_EQ(corpus_density(0), Density::kSparse);
  EXPECT_EQ(corpus_density(4), Density::kSparse);
  EXPECT_EQ(corpus_density(5), Density::kDense);
  EXPECT_EQ(corpus_density(9), Density::kDense);
  EXPECT_EQ(corpus_density(10), Density::kUniform);
  const Instance a = corpus_instance(spec, 3);
  const Instance b = corpus_instance(spec, 3);
  EXPECT_EQ(a.label(), b.label());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_TRUE(std::ranges::equal(a[k].demand().cells(), b[k].demand().cells()));
  spec.releases = true;
  const Instance r = corpus_instance(spec, 3);
  EXPECT_GE(r[0].release(), 1);
  for (std::size_t k = 0; k < r.size(); ++k) EXPECT_TRUE(std::ranges::equal(r[k].demand().cells(), a[k].demand().cells()));
}

TEST(Sweep, AnchorRatioIsOneAndJobsDoNotMatter) {
  const std::vector<std::int64_t> uppers{0, 50};
  const std::array<Rule, 3> rules{Rule::kFifo, Rule::kStpt, Rule::kSmpt};
  const auto serial = release_sweep(4, 10, Density::kSparse, uppers, 4, rules, Rule::kFifo, ScheduleCase::kC, 3, 1);
  const auto threaded = release_sweep(4, 10, Density::kSparse, uppers, 4, rules, Rule::kFifo, ScheduleCase::kC, 3, 4);
  ASSERT_EQ(serial.size(), 2u);
  for (std::size_t u = 0; u < serial.size(); ++u) {
    EXPECT_EQ(serial[u].upper, uppers[u]);
    EXPECT_DOUBLE_EQ(serial[u].mean_ratio[0], 1.0);
    EXPECT_EQ(serial[u].mean_ratio, threaded[u].mean_ratio);
  }
}
