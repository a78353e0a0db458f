#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <thread>

#include "dv/errors.hpp"
#include "dv/solver.hpp"

namespace dv {
namespace {

using kernels::Word;
using Clock = std::chrono::steady_clock;

// Difference sets of all row pairs (i < j), in lexicographic (i, j) order.
struct PairTable {
  std::size_t stride = 0;
  std::vector<Word> diffs;
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> second;

  explicit PairTable(const BinaryMatrix& a) : stride(a.words_per_row()) {
    const std::size_t m = a.rows();
    const std::size_t count = m * (m - 1) / 2;
    diffs.resize(count * stride);
    first.reserve(count);
    second.reserve(count);
    std::size_t p = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = i + 1; j <= m; ++j, ++p) {
        kernels::xor_into(a.row_words(i), a.row_words(j), diff_mut(p));
        first.push_back(static_cast<std::uint32_t>(i - 1));
        second.push_back(static_cast<std::uint32_t>(j - 1));
      }
    }
  }

  kernels::ConstWords diff(std::size_t p) const { return {diffs.data() + p * stride, stride}; }
  kernels::MutWords diff_mut(std::size_t p) { return {diffs.data() + p * stride, stride}; }
};

// A search node: columns chosen so far, columns excluded by earlier sibling
// branches, and the pairs the chosen columns do not yet separate.
struct Node {
  std::vector<std::uint32_t> selected;
  std::vector<Word> forbidden;
  std::vector<std::uint32_t> unseparated;
};

// Shared across workers; only counters and the stop flag are written.
struct SharedState {
  std::uint64_t node_limit;
  std::optional<Clock::time_point> deadline;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
};

class LevelSearch {
 public:
  LevelSearch(const PairTable& pairs, std::size_t rows, std::size_t target, SharedState& shared)
      : pairs_(pairs), degree_(rows, 0), target_(target), shared_(shared) {}

  ~LevelSearch() { flush(); }

  // Expands one node: records a leaf, prunes, or returns its children.
  std::vector<Node> expand(const Node& node) {
    count_node();
    std::vector<Node> children;
    if (node.unseparated.empty()) {
      offer_leaf(node.selected);
      return children;
    }
    if (node.selected.size() >= target_) return children;
    if (node.selected.size() + classes_lower_bound(node) > target_) return children;

    // Unseparated pair with the fewest still-allowed columns; ties go to the
    // earliest pair, i.e. the smallest first row.
    std::size_t best = SIZE_MAX, best_count = SIZE_MAX;
    for (std::uint32_t p : node.unseparated) {
      std::size_t c = kernels::popcount_andnot(pairs_.diff(p), node.forbidden);
      if (c < best_count) {
        best_count = c;
        best = p;
        if (c == 0) break;
      }
    }
    if (best_count == 0) return children;

    std::vector<Word> branch_cols(pairs_.stride);
    const auto diff = pairs_.diff(best);
    for (std::size_t w = 0; w < pairs_.stride; ++w) branch_cols[w] = diff[w] & ~node.forbidden[w];

    std::vector<Word> forbidden = node.forbidden;
    kernels::for_each_set_bit(branch_cols, [&](std::size_t col) {
      Node child;
      child.selected = node.selected;
      child.selected.push_back(static_cast<std::uint32_t>(col));
      child.forbidden = forbidden;
      child.unseparated.reserve(node.unseparated.size());
      for (std::uint32_t p : node.unseparated)
        if (!kernels::test_bit(pairs_.diff(p), col)) child.unseparated.push_back(p);
      children.push_back(std::move(child));
      kernels::set_bit(forbidden, col);
    });
    return children;
  }

  void dfs(const Node& node) {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    for (const Node& child : expand(node)) dfs(child);
  }

  const std::optional<std::vector<std::uint32_t>>& best() const { return best_; }

  void flush() {
    if (local_nodes_ == 0) return;
    std::uint64_t total = shared_.nodes.fetch_add(local_nodes_) + local_nodes_;
    local_nodes_ = 0;
    if (total > shared_.node_limit) shared_.stop = true;
    if (shared_.deadline && Clock::now() > *shared_.deadline) shared_.stop = true;
  }

 private:
  void count_node() {
    if (++local_nodes_ >= 1024) flush();
  }

  // Rows agreeing on every selected column form cliques in the unseparated
  // pair graph; a class of size c needs ceil(log2 c) more columns.
  std::size_t classes_lower_bound(const Node& node) {
    std::uint32_t max_degree = 0;
    for (std::uint32_t p : node.unseparated) {
      max_degree = std::max(max_degree, ++degree_[pairs_.first[p]]);
      max_degree = std::max(max_degree, ++degree_[pairs_.second[p]]);
    }
    for (std::uint32_t p : node.unseparated) {
      degree_[pairs_.first[p]] = 0;
      degree_[pairs_.second[p]] = 0;
    }
    return static_cast<std::size_t>(std::bit_width(max_degree));  // ceil(log2(max_degree + 1))
  }

  void offer_leaf(std::vector<std::uint32_t> cols) {
    std::sort(cols.begin(), cols.end());
    if (!best_ || cols < *best_) best_ = std::move(cols);
  }

  const PairTable& pairs_;
  std::vector<std::uint32_t> degree_;
  std::size_t target_;
  SharedState& shared_;
  std::uint64_t local_nodes_ = 0;
  std::optional<std::vector<std::uint32_t>> best_;
};

std::optional<std::vector<std::uint32_t>> min_of(std::optional<std::vector<std::uint32_t>> a,
                                                 const std::optional<std::vector<std::uint32_t>>& b) {
  if (b && (!a || *b < *a)) return b;
  return a;
}

// Lexicographically smallest hitting set of exactly `target` columns, if any
// exists. Only called with target at or below the true minimum's level, so
// every leaf reached has exactly `target` columns.
std::optional<std::vector<std::uint32_t>> search_level(const PairTable& pairs, std::size_t rows,
                                                       std::size_t target, unsigned workers,
                                                       SharedState& shared) {
  Node root;
  root.forbidden.assign(pairs.stride, 0);
  root.unseparated.resize(pairs.first.size());
  for (std::size_t p = 0; p < root.unseparated.size(); ++p) root.unseparated[p] = static_cast<std::uint32_t>(p);

  if (workers <= 1) {
    LevelSearch search(pairs, rows, target, shared);
    search.dfs(root);
    return search.best();
  }

  // Breadth-first expansion to a frontier, then a static split. Leaves found
  // while expanding are merged like any worker's result.
  LevelSearch seed(pairs, rows, target, shared);
  std::vector<Node> frontier{std::move(root)};
  const std::size_t want = static_cast<std::size_t>(workers) * 8;
  while (!frontier.empty() && frontier.size() < want) {
    std::vector<Node> next;
    for (const Node& n : frontier)
      for (Node& c : seed.expand(n)) next.push_back(std::move(c));
    if (next.empty()) {
      frontier.clear();
      break;
    }
    frontier = std::move(next);
  }
  seed.flush();

  std::vector<std::optional<std::vector<std::uint32_t>>> results(workers);
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      LevelSearch search(pairs, rows, target, shared);
      for (std::size_t i = cursor++; i < frontier.size(); i = cursor++) search.dfs(frontier[i]);
      results[w] = search.best();
    });
  }
  for (auto& t : pool) t.join();

  auto best = seed.best();
  for (const auto& r : results) best = min_of(std::move(best), r);
  return best;
}

}  // namespace

SolveReport solve_exact(const DvInstance& inst, const SolveOptions& opts) {
  const auto start = Clock::now();
  const BinaryMatrix& a = inst.matrix;
  SolveReport report;
  report.lower_bound_used = lower_bound(a);
  auto finish = [&](Outcome o) {
    report.outcome = o;
    report.wall_time = Clock::now() - start;
    return report;
  };

  if (!rows_pairwise_distinct(a)) return finish(Outcome::infeasible);

  const PairTable pairs(a);
  SharedState shared{opts.node_limit, std::nullopt};
  if (opts.time_limit) shared.deadline = start + *opts.time_limit;

  const std::size_t max_size = inst.budget_k == 0 ? a.cols() : inst.budget_k;
  for (std::size_t t = report.lower_bound_used; t <= max_size; ++t) {
    auto best = search_level(pairs, a.rows(), t, std::max(1U, opts.workers), shared);
    report.nodes_explored = shared.nodes.load();
    if (report.nodes_explored > opts.node_limit)
      throw ResourceLimit("exact solver: node limit " + std::to_string(opts.node_limit) + " exceeded");
    if (shared.stop) throw ResourceLimit("exact solver: time limit exceeded");
    if (best) {
      std::vector<std::size_t> cols;
      for (std::uint32_t c : *best) cols.push_back(c + 1);
      report.solution = ColumnSet(std::move(cols));
      return finish(Outcome::solution);
    }
  }
  return finish(Outcome::budget_exceeded);
}

}  // namespace dv
