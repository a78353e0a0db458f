#include <bit>

#include "dv/errors.hpp"
#include "dv/solver.hpp"

namespace dv {

std::string SolveReport::outcome_string() const {
  switch (outcome) {
    case Outcome::solution:
      return solution->empty() ? "solution" : "solution " + solution->to_string();
    case Outcome::infeasible:
      return "infeasible";
    case Outcome::budget_exceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

bool verify_solution(const BinaryMatrix& a, const ColumnSet& k) {
  if (k.max() > a.cols()) throw InvalidArgument("verify_solution: column index exceeds matrix width");
  if (k.empty()) return a.rows() <= 1;
  return rows_pairwise_distinct(restrict(a, k));
}

std::size_t lower_bound(const BinaryMatrix& a) {
  const std::size_t m = a.rows();
  return m <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(m - 1));
}

}  // namespace dv
