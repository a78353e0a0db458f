#include <gtest/gtest.h>

#include <random>

#include "dv/errors.hpp"
#include "dv/instance.hpp"
#include "oracles.hpp"

TEST(InstanceFormat, ParsesWithComments) {
  const auto inst = dv::parse_instance("c format v1\nc hello\np dv 3 2 2\n00\nc mid\n01\n11\n");
  EXPECT_EQ(inst.budget_k, 2U);
  EXPECT_EQ(inst.matrix, (dv::BinaryMatrix{{0, 0}, {0, 1}, {1, 1}}));
}

TEST(InstanceFormat, WritesCanonicalText) {
  const dv::DvInstance inst(dv::BinaryMatrix{{0, 0}, {0, 1}, {1, 1}}, 0);
  EXPECT_EQ(dv::format_instance(inst), "c format v1\np dv 3 2 0\n00\n01\n11\n");
}

TEST(InstanceFormat, RoundTripsRandomInstances) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 1 + rng() % 20, n = 1 + rng() % 100;
    const dv::DvInstance inst(dv::BinaryMatrix::from_strings(oracle::random_rows(rng, m, n)), rng() % (n + 1));
    const std::string text = dv::format_instance(inst);
    const auto back = dv::parse_instance(text);
    EXPECT_EQ(back.matrix, inst.matrix);
    EXPECT_EQ(back.budget_k, inst.budget_k);
    EXPECT_EQ(dv::format_instance(back), text);
  }
}

TEST(InstanceFormat, Errors) {
  EXPECT_THROW(dv::parse_instance(""), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p cnf 1 1\n0\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p dv 2 2 0\n00\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p dv 1 2 0\n0\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p dv 1 2 0\n0 1\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p dv 1 2 0\n02\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p dv 1 2 3\n01\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("p dv 1 2 0\n01\n10\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_instance("c format v2\np dv 1 1 0\n0\n"), dv::ParseError);
  try {
    dv::parse_instance("p dv 2 2 0\n00\n0\n");
    FAIL();
  } catch (const dv::ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(InstanceFormat, DuplicateRowsAreAccepted) {
  EXPECT_NO_THROW(dv::parse_instance("p dv 2 2 1\n01\n01\n"));
}

TEST(SolutionFormat, ParseAndFormat) {
  EXPECT_EQ(dv::parse_solution("1 4 7\n"), dv::ColumnSet({1, 4, 7}));
  EXPECT_EQ(dv::parse_solution("c format v1\n2\n"), dv::ColumnSet({2}));
  EXPECT_EQ(dv::parse_solution(""), std::nullopt);
  EXPECT_EQ(dv::parse_solution("c format v1\n"), std::nullopt);
  EXPECT_EQ(dv::parse_solution("\n"), dv::ColumnSet{});
  EXPECT_THROW(dv::parse_solution("2 1\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_solution("0\n"), dv::ParseError);
  EXPECT_THROW(dv::parse_solution("1\n2\n"), dv::ParseError);
  EXPECT_EQ(dv::format_solution(dv::ColumnSet({1, 2})), "c format v1\n1 2\n");
  EXPECT_EQ(dv::format_solution(std::nullopt), "c format v1\n");
  EXPECT_EQ(dv::parse_solution(dv::format_solution(dv::ColumnSet{})), dv::ColumnSet{});
}

TEST(DvInstance, BudgetMustNotExceedWidth) {
  EXPECT_THROW(dv::DvInstance(dv::BinaryMatrix{{0, 1}}, 3), dv::InvalidArgument);
}
