#include <gtest/gtest.h>

#include "coflow/instances.hpp"
#include "coflow/ordering.hpp"
#include "oracles.hpp"

using namespace coflow;

namespace {

using Perm = std::vector<CoflowIndex>;

Instance one_port(std::vector<std::int64_t> sizes, std::vector<std::int64_t> releases) {
  std::vector<CoflowMatrix> coflows;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    coflows.emplace_back(k + 1, DemandMatrix{{sizes[k]}}, Decimal::from_integer(1), releases[k]);
  }
  return Instance(1, std::move(coflows));
}

Instance two_by_two(std::vector<DemandMatrix> ds, std::vector<std::int64_t> releases = {}) {
  std::vector<CoflowMatrix> coflows;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    coflows.emplace_back(k + 1, ds[k], Decimal::from_integer(1), releases.empty() ? 0 : releases[k]);
  }
  return Instance(ds[0].size(), std::move(coflows));
}

// Bottleneck port load of a set of coflows.
std::int64_t bottleneck(const Instance& inst, const std::vector<CoflowIndex>& set) {
  DemandMatrix sum(inst.m());
  for (CoflowIndex k : set) sum += inst[k].demand();
  return sum.load();
}

}  // namespace

TEST(Fifo, SortsByReleaseThenIndex) {
  EXPECT_EQ(order_fifo(one_port({1, 1, 1}, {5, 0, 3})).permutation, (Perm{1, 2, 0}));
  EXPECT_EQ(order_fifo(one_port({1, 1, 1}, {0, 0, 0})).permutation, (Perm{0, 1, 2}));
  EXPECT_EQ(order_fifo(one_port({1, 1}, {2, 2})).permutation, (Perm{0, 1}));
}

TEST(Stpt, TotalDemandPlusRelease) {
  EXPECT_EQ(order_stpt(one_port({7, 3, 5}, {0, 0, 0})).permutation, (Perm{1, 2, 0}));
  const OrderingResult r = order_stpt(one_port({10, 10}, {0, 5}));
  EXPECT_EQ(r.permutation, (Perm{0, 1}));
  EXPECT_EQ(r.scores, (std::vector<double>{10, 15}));
  EXPECT_EQ(order_stpt(one_port({4}, {0})).permutation, (Perm{0}));
}

TEST(Smpt, LoadPlusRelease) {
  const Instance a = two_by_two({DemandMatrix{{2, 0}, {0, 2}}, DemandMatrix{{3, 0}, {0, 0}}});
  EXPECT_EQ(order_smpt(a).permutation, (Perm{0, 1}));
  const Instance b = two_by_two({DemandMatrix{{2, 0}, {0, 2}}, DemandMatrix{{3, 0}, {0, 0}}}, {4, 0});
  EXPECT_EQ(order_smpt(b).permutation, (Perm{1, 0}));
  EXPECT_EQ(order_smpt(b).scores, (std::vector<double>{6, 3}));
  const Instance col(3, {CoflowMatrix(1, DemandMatrix{{10, 0, 0}, {10, 0, 0}, {10, 0, 0}})});
  EXPECT_EQ(order_smpt(col).scores[0], 30.0);
}

TEST(Smct, SingleMachineExamples) {
  const OrderingResult r = order_smct(one_port({3, 1}, {0, 0}));
  EXPECT_EQ(r.permutation, (Perm{1, 0}));
  EXPECT_EQ(r.scores, (std::vector<double>{4, 1}));
  const OrderingResult g = order_smct(one_port({2, 2}, {0, 10}));
  EXPECT_EQ(g.permutation, (Perm{0, 1}));
  EXPECT_EQ(g.scores, (std::vector<double>{2, 12}));
  std::vector<DemandMatrix> same(3, DemandMatrix{{1, 2}, {3, 0}});
  EXPECT_EQ(order_smct(two_by_two(same)).permutation, (Perm{0, 1, 2}));
}

TEST(Smct, MatchesIndependentMachineSimulation) {
  oracle::TestRng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = oracle::random_instance(rng, 3, 7, 9, 0.4, trial % 2 ? 6 : 0);
    const OrderingResult r = order_smct(inst);
    for (CoflowIndex k = 0; k < inst.size(); ++k) {
      double worst = 0;
      for (std::size_t machine = 0; machine < 6; ++machine) {
        auto p = [&](CoflowIndex c) {
          return machine < 3 ? inst[c].demand().row_sum(machine) : inst[c].demand().col_sum(machine - 3);
        };
        // Jobs ahead of k on this machine: smaller key, or equal key and lower index.
        std::vector<CoflowIndex> seq;
        for (CoflowIndex c = 0; c < inst.size(); ++c) seq.push_back(c);
        std::sort(seq.begin(), seq.end(), [&](CoflowIndex a, CoflowIndex b) {
          const auto ka = p(a) + inst[a].release(), kb = p(b) + inst[b].release();
          return ka != kb ? ka < kb : a < b;
        });
        std::int64_t t = 0;
        for (CoflowIndex c : seq) {
          if (p(c) > 0) t = std::max(t, inst[c].release()) + p(c);
          if (c == k) {
            worst = std::max(worst, static_cast<double>(p(c) > 0 ? t : inst[c].release()));
            break;
          }
        }
      }
      EXPECT_EQ(r.scores[k], worst);
    }
    EXPECT_TRUE(r.scores_nondecreasing());
  }
}

TEST(Ect, HeavyCoflowGoesLast) {
  const Instance inst = two_by_two({DemandMatrix{{5, 0}, {0, 0}}, DemandMatrix{{0, 0}, {0, 5}}, DemandMatrix{{6, 0}, {0, 6}}});
  EXPECT_EQ(order_ect(inst).permutation, (Perm{0, 1, 2}));
}

TEST(Ect, GreedyChoiceMatchesBruteForceEstimate) {
  oracle::TestRng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = oracle::random_instance(rng, 2, 6, 9, 0.6);
    const OrderingResult r = order_ect(inst);
    std::vector<CoflowIndex> prefix;
    std::vector<bool> used(inst.size(), false);
    for (CoflowIndex chosen : r.permutation) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      CoflowIndex arg = 0;
      for (CoflowIndex k = 0; k < inst.size(); ++k) {
        if (used[k]) continue;
        auto with = prefix;
        with.push_back(k);
        if (const auto v = bottleneck(inst, with); v < best) {
          best = v;
          arg = k;
        }
      }
      EXPECT_EQ(chosen, arg);
      used[chosen] = true;
      prefix.push_back(chosen);
    }
  }
}

TEST(Ect, ExampleOneFavoursDiagonalNines) {
  const Instance inst = example1_family(2, 1, 1.0);
  EXPECT_EQ(order_ect(inst).permutation.front(), 2u);
}

TEST(Ect, SequentialWithReleases) {
  // r = (0, 1, 2); rho = (5, 2, 1). Finish 5 after the first coflow; then
  // both others are released and the shorter one wins.
  const Instance inst = one_port({5, 2, 1}, {0, 1, 2});
  const OrderingResult r = order_ect(inst);
  EXPECT_EQ(r.permutation, (Perm{0, 2, 1}));
  EXPECT_EQ(r.scores, (std::vector<double>{5, 8, 6}));
  // Nothing released by the current finish: the earliest estimate is taken.
  const OrderingResult gap = order_ect(one_port({1, 1}, {10, 3}));
  EXPECT_EQ(gap.permutation, (Perm{1, 0}));
}

TEST(Ect, SingleCoflow) { EXPECT_EQ(order_ect(one_port({4}, {0})).permutation, (Perm{0})); }

TEST(Orderings, ValidAndDeterministic) {
  oracle::TestRng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = oracle::random_instance(rng, 3, 10, 20, 0.5, trial % 2 ? 15 : 0);
    for (Rule rule : kAllRules) {
      const OrderingResult a = compute_ordering(inst, rule);
      const OrderingResult b = compute_ordering(inst, rule);
      EXPECT_EQ(a.rule, rule);
      EXPECT_TRUE(a.is_permutation_of(inst.size()));
      EXPECT_EQ(a.permutation, b.permutation);
      EXPECT_EQ(a.scores, b.scores);
      if (rule != Rule::kFifo || !inst.zero_release()) { EXPECT_TRUE(a.scores_nondecreasing()) << rule_name(rule); }
    }
  }
}

TEST(Orderings, InputRelabelingEquivariance) {
  oracle::TestRng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = oracle::random_instance(rng, 3, 8, 9, 0.5);
    // Swap inputs 0 and 2 in every coflow.
    std::vector<CoflowMatrix> swapped;
    for (const auto& c : inst.coflows()) {
      DemandMatrix d(3);
      for (Port i = 0; i < 3; ++i) {
        for (Port j = 0; j < 3; ++j) d(i == 0 ? 2 : (i == 2 ? 0 : i), j) = c.demand()(i, j);
      }
      swapped.push_back(c.with_demand(std::move(d)));
    }
    const Instance relabeled(3, std::move(swapped));
    for (Rule rule : {Rule::kStpt, Rule::kSmpt, Rule::kSmct}) {
      EXPECT_EQ(compute_ordering(inst, rule).permutation, compute_ordering(relabeled, rule).permutation);
    }
  }
}

TEST(Orderings, ExampleOneSeparatesStpt) {
  for (double a : {0.5, 1.0, 1.5, 3.0}) {
    for (std::size_t n : {1u, 2u, 5u}) {
      const Instance inst = example1_family(2, n, a);
      if (inst.size() == 2 * n) continue;  // floor(a n) = 0 leaves nothing to separate
      const Perm stpt = order_stpt(inst).permutation;
      EXPECT_NE(stpt, order_smpt(inst).permutation);
      EXPECT_NE(stpt, order_smct(inst).permutation);
      EXPECT_NE(stpt, order_ect(inst).permutation);
    }
  }
}

TEST(Orderings, ParseRuleNames) {
  EXPECT_EQ(parse_rule("LP"), Rule::kLp);
  EXPECT_EQ(parse_rule("smct"), Rule::kSmct);
  EXPECT_EQ(parse_rule("Fifo"), Rule::kFifo);
  EXPECT_THROW(parse_rule("srpt"), std::invalid_argument);
  for (Rule r : kAllRules) EXPECT_EQ(parse_rule(rule_name(r)), r);
}
