#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dv/bitmatrix.hpp"
#include "dv/instance.hpp"

namespace dv {

struct SolveOptions {
  // Brute force refuses a size level whose subset count would push the total
  // past this; the exact solver throws once it has explored more nodes.
  std::uint64_t node_limit = 100'000'000;
  // Threads for the exact solver. The returned answer does not depend on it.
  unsigned workers = 1;
  std::optional<std::chrono::milliseconds> time_limit;
};

enum class Outcome { solution, infeasible, budget_exceeded };

struct SolveReport {
  Outcome outcome = Outcome::infeasible;
  std::optional<ColumnSet> solution;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds wall_time{0};
  std::size_t lower_bound_used = 0;

  // "solution 1 2", "infeasible" or "budget-exceeded". Identical across
  // solvers that agree on the canonical answer.
  std::string outcome_string() const;
};

// True iff the rows of A[*, K] are pairwise distinct. The empty set only
// separates a single-row matrix. Throws InvalidArgument for columns > n.
bool verify_solution(const BinaryMatrix& a, const ColumnSet& k);

// ceil(log2 m): t columns split the rows into at most 2^t classes.
std::size_t lower_bound(const BinaryMatrix& a);

// Enumerates column subsets by increasing size from lower_bound(A), each size
// in lexicographic order; the first verifying subset is the canonical answer.
// Throws ResourceLimit before a size level that would exceed node_limit.
SolveReport solve_brute_force(const DvInstance& inst, const SolveOptions& opts = {});

// Every verifying subset of size <= max_size, in (size, lexicographic) order.
std::vector<ColumnSet> enumerate_solutions(const BinaryMatrix& a, std::size_t max_size,
                                           const SolveOptions& opts = {});

// Branch and bound over the hitting-set view: a column set is a solution iff
// it hits the difference set of every row pair. Returns the same canonical
// answer as solve_brute_force.
SolveReport solve_exact(const DvInstance& inst, const SolveOptions& opts = {});

// Greedy set cover over row pairs, ties to the lowest column. Throws
// Infeasible when A has duplicate rows.
ColumnSet solve_greedy(const BinaryMatrix& a);

}  // namespace dv
