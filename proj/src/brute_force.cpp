#include <algorithm>
#include <chrono>
#include <numeric>

#include "dv/errors.hpp"
#include "dv/solver.hpp"

namespace dv {
namespace {

// C(n, t), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t t) {
  if (t > n) return 0;
  t = std::min(t, n - t);
  __extension__ unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= t; ++i) {
    c = c * (n - t + i) / i;
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

// Walks size levels [first, last], calling visit(K) for every t-subset in
// lexicographic order until visit returns false.
class SubsetWalker {
 public:
  SubsetWalker(std::size_t n, const SolveOptions& opts) : n_(n), opts_(opts), start_(Clock::now()) {}

  template <class Visit>
  bool walk_level(std::size_t t, Visit&& visit) {
    const std::uint64_t count = binomial(n_, t);
    if (count > opts_.node_limit || visited_ > opts_.node_limit - count)
      throw ResourceLimit("brute force: enumerating size " + std::to_string(t) + " would exceed node limit " +
                          std::to_string(opts_.node_limit));
    std::vector<std::size_t> idx(t);
    std::iota(idx.begin(), idx.end(), std::size_t{1});
    while (true) {
      ++visited_;
      if (opts_.time_limit && (visited_ & 1023) == 0 && Clock::now() - start_ > *opts_.time_limit)
        throw ResourceLimit("brute force: time limit exceeded");
      if (!visit(idx)) return false;
      // Advance to the next combination of {1..n}.
      std::size_t pos = t;
      while (pos > 0 && idx[pos - 1] == n_ - t + pos) --pos;
      if (pos == 0) return true;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  std::uint64_t visited() const { return visited_; }

 private:
  using Clock = std::chrono::steady_clock;
  std::size_t n_;
  const SolveOptions& opts_;
  Clock::time_point start_;
  std::uint64_t visited_ = 0;
};

}  // namespace

SolveReport solve_brute_force(const DvInstance& inst, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const BinaryMatrix& a = inst.matrix;
  SolveReport report;
  report.lower_bound_used = lower_bound(a);
  auto finish = [&](Outcome o) {
    report.outcome = o;
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
  };

  if (!rows_pairwise_distinct(a)) return finish(Outcome::infeasible);

  const std::size_t max_size = inst.budget_k == 0 ? a.cols() : inst.budget_k;
  SubsetWalker walker(a.cols(), opts);
  for (std::size_t t = report.lower_bound_used; t <= max_size; ++t) {
    walker.walk_level(t, [&](const std::vector<std::size_t>& idx) {
      ColumnSet k(idx);
      if (!verify_solution(a, k)) return true;
      report.solution = std::move(k);
      return false;
    });
    if (report.solution) break;
  }
  report.nodes_explored = walker.visited();
  return finish(report.solution ? Outcome::solution : Outcome::budget_exceeded);
}

std::vector<ColumnSet> enumerate_solutions(const BinaryMatrix& a, std::size_t max_size, const SolveOptions& opts) {
  std::vector<ColumnSet> out;
  if (!rows_pairwise_distinct(a)) return out;
  max_size = std::min(max_size, a.cols());
  SubsetWalker walker(a.cols(), opts);
  for (std::size_t t = lower_bound(a); t <= max_size; ++t) {
    walker.walk_level(t, [&](const std::vector<std::size_t>& idx) {
      ColumnSet k(idx);
      if (verify_solution(a, k)) out.push_back(std::move(k));
      return true;
    });
  }
  return out;
}

}  // namespace dv
