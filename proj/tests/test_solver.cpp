#include <gtest/gtest.h>

#include <random>

#include "dv/errors.hpp"
#include "dv/solver.hpp"
#include "oracles.hpp"

using dv::BinaryMatrix;
using dv::ColumnSet;
using dv::DvInstance;
using dv::Outcome;

namespace {

const BinaryMatrix kThreeByTwo{{0, 0}, {0, 1}, {1, 1}};
const BinaryMatrix kXorMatrix{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};

BinaryMatrix all_rows(std::size_t t) {
  std::vector<std::string> rows;
  for (std::size_t x = 0; x < (std::size_t{1} << t); ++x) rows.push_back(oracle::bin(x, t));
  return BinaryMatrix::from_strings(rows);
}

}  // namespace

TEST(VerifySolution, Examples) {
  EXPECT_TRUE(dv::verify_solution(kThreeByTwo, {1, 2}));
  EXPECT_FALSE(dv::verify_solution(kThreeByTwo, {1}));
  EXPECT_FALSE(dv::verify_solution(kThreeByTwo, {2}));
  EXPECT_THROW(dv::verify_solution(kThreeByTwo, {3}), dv::InvalidArgument);
  EXPECT_FALSE(dv::verify_solution(kThreeByTwo, ColumnSet{}));
  EXPECT_TRUE(dv::verify_solution(BinaryMatrix{{1, 0}}, ColumnSet{}));
}

TEST(LowerBound, Examples) {
  auto rows = [](std::size_t m) { return BinaryMatrix::from_strings(std::vector<std::string>(m, "0")); };
  EXPECT_EQ(dv::lower_bound(rows(1)), 0U);
  EXPECT_EQ(dv::lower_bound(rows(2)), 1U);
  EXPECT_EQ(dv::lower_bound(rows(5)), 3U);
  EXPECT_EQ(dv::lower_bound(rows(8)), 3U);
  EXPECT_EQ(dv::lower_bound(rows(9)), 4U);
}

TEST(BruteForce, Examples) {
  auto r = dv::solve_brute_force(DvInstance(kThreeByTwo, 2));
  ASSERT_EQ(r.outcome, Outcome::solution);
  EXPECT_EQ(*r.solution, ColumnSet({1, 2}));

  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_EQ(dv::solve_brute_force(DvInstance(BinaryMatrix{{0, 1}, {0, 1}}, k)).outcome, Outcome::infeasible);

  r = dv::solve_brute_force(DvInstance(kXorMatrix, 2));
  ASSERT_EQ(r.outcome, Outcome::solution);
  EXPECT_EQ(*r.solution, ColumnSet({1, 2}));
  // Cross-check the lexicographic claim with the bitmask oracle.
  EXPECT_EQ(oracle::min_solution({"000", "011", "101", "110"}, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(dv::verify_solution(kXorMatrix, {1, 3}));
  EXPECT_TRUE(dv::verify_solution(kXorMatrix, {2, 3}));

  EXPECT_EQ(dv::solve_brute_force(DvInstance(kThreeByTwo, 1)).outcome, Outcome::budget_exceeded);
}

TEST(BruteForce, RefusesOverNodeLimit) {
  dv::SolveOptions opts;
  opts.node_limit = 10;
  // 4 rows need 2 columns; C(6,2) = 15 > 10.
  const auto a = BinaryMatrix::from_strings({"000000", "000001", "000010", "000100"});
  EXPECT_THROW(dv::solve_brute_force(DvInstance(a, 0), opts), dv::ResourceLimit);
  opts.node_limit = 100;
  EXPECT_EQ(dv::solve_brute_force(DvInstance(a, 0), opts).outcome, Outcome::solution);
}

TEST(Exact, SameAnswersAsBruteForceOnExamples) {
  for (const auto& inst : {DvInstance(kThreeByTwo, 2), DvInstance(BinaryMatrix{{0, 1}, {0, 1}}, 1),
                           DvInstance(kXorMatrix, 2), DvInstance(kThreeByTwo, 1), DvInstance(kXorMatrix, 0)}) {
    EXPECT_EQ(dv::solve_exact(inst).outcome_string(), dv::solve_brute_force(inst).outcome_string());
  }
}

TEST(Exact, AllRowsMatrixNeedsEveryColumn) {
  for (std::size_t t = 1; t <= 5; ++t) {
    const auto a = all_rows(t);
    const auto r = dv::solve_exact(DvInstance(a, t));
    ASSERT_EQ(r.outcome, Outcome::solution);
    EXPECT_EQ(*r.solution, ColumnSet::all(t));
    EXPECT_EQ(r.lower_bound_used, t);
    if (t > 1) {
      EXPECT_EQ(dv::solve_exact(DvInstance(a, t - 1)).outcome, Outcome::budget_exceeded);
    }
  }
}

TEST(Exact, SingleRowNeedsNoColumns) {
  const auto r = dv::solve_exact(DvInstance(BinaryMatrix{{1, 0, 1}}, 0));
  ASSERT_EQ(r.outcome, Outcome::solution);
  EXPECT_TRUE(r.solution->empty());
  EXPECT_EQ(dv::solve_brute_force(DvInstance(BinaryMatrix{{1, 0, 1}}, 0)).outcome_string(), r.outcome_string());
}

TEST(Exact, NodeLimit) {
  dv::SolveOptions opts;
  opts.node_limit = 1;
  EXPECT_THROW(dv::solve_exact(DvInstance(all_rows(4), 0), opts), dv::ResourceLimit);
}

// Random matrices: exact, brute force and the bitmask oracle agree, solutions
// are sound, supersets of solutions still verify, and thread count does not
// change the answer.
TEST(SolverProperties, OracleEquivalenceAndSoundness) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + rng() % 10, n = 1 + rng() % 12;
    auto rows = oracle::random_rows(rng, m, n);
    const BinaryMatrix a = BinaryMatrix::from_strings(rows);
    const std::size_t k = rng() % (n + 1);
    const DvInstance inst(a, k);

    const auto exact = dv::solve_exact(inst);
    const auto brute = dv::solve_brute_force(inst);
    ASSERT_EQ(exact.outcome_string(), brute.outcome_string()) << "trial " << trial;

    dv::SolveOptions par;
    par.workers = 4;
    const auto exact4 = dv::solve_exact(inst, par);
    EXPECT_EQ(exact4.outcome_string(), exact.outcome_string());
    EXPECT_EQ(exact4.nodes_explored, exact.nodes_explored);

    if (!oracle::distinct(rows)) {
      EXPECT_EQ(exact.outcome, Outcome::infeasible);
      EXPECT_THROW(dv::solve_greedy(a), dv::Infeasible);
      continue;
    }
    const auto naive = oracle::min_solution(rows, k);
    if (naive) {
      ASSERT_EQ(exact.outcome, Outcome::solution);
      EXPECT_EQ(exact.solution->columns(), *naive);
    } else {
      EXPECT_EQ(exact.outcome, Outcome::budget_exceeded);
    }
    if (exact.solution) {
      const ColumnSet& sol = *exact.solution;
      EXPECT_TRUE(dv::verify_solution(a, sol));
      if (k > 0) {
        EXPECT_LE(sol.size(), k);
      }
      EXPECT_GE(sol.size(), dv::lower_bound(a));
      for (std::size_t c = 1; c <= n; ++c) {
        if (sol.contains(c)) continue;
        auto cols = sol.columns();
        cols.push_back(c);
        EXPECT_TRUE(dv::verify_solution(a, ColumnSet(cols)));
      }
    }
    const ColumnSet greedy = dv::solve_greedy(a);
    EXPECT_TRUE(dv::verify_solution(a, greedy));
    const auto minimum = oracle::min_solution(rows, 0);
    EXPECT_GE(greedy.size(), minimum->size());
  }
}

TEST(Greedy, Examples) {
  EXPECT_EQ(dv::solve_greedy(kThreeByTwo), ColumnSet({1, 2}));
  EXPECT_EQ(dv::solve_greedy(BinaryMatrix{{0, 0}, {0, 1}, {1, 0}, {1, 1}}), ColumnSet({1, 2}));
  EXPECT_EQ(dv::solve_greedy(BinaryMatrix{{0, 0, 0}, {1, 1, 1}}), ColumnSet({1}));
  EXPECT_TRUE(dv::solve_greedy(BinaryMatrix{{0, 1}}).empty());
  EXPECT_THROW(dv::solve_greedy(BinaryMatrix{{0, 1}, {0, 1}}), dv::Infeasible);
}

TEST(Greedy, FirstPickSeparatesMostPairs) {
  // Column 2 separates 4 of 6 pairs, columns 1 and 3 only 3 each. After it,
  // columns 1 and 3 each split one class; the tie goes to column 1.
  const auto a = BinaryMatrix::from_strings({"000", "001", "011", "111"});
  const ColumnSet g = dv::solve_greedy(a);
  EXPECT_EQ(g, ColumnSet({1, 2, 3}));
  EXPECT_TRUE(dv::verify_solution(a, g));
}

TEST(Exact, WideMatrixUsesSeveralWords) {
  // 200 columns; only columns 150 and 199 separate the four rows.
  std::vector<std::string> rows(4, std::string(200, '0'));
  rows[1][149] = '1';
  rows[2][198] = '1';
  rows[3][149] = rows[3][198] = '1';
  const auto a = BinaryMatrix::from_strings(rows);
  const auto r = dv::solve_exact(DvInstance(a, 0));
  ASSERT_EQ(r.outcome, Outcome::solution);
  EXPECT_EQ(*r.solution, ColumnSet({150, 199}));
}
