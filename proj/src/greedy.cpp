#include <numeric>

#include "dv/errors.hpp"
#include "dv/solver.hpp"

namespace dv {

ColumnSet solve_greedy(const BinaryMatrix& a) {
  if (!rows_pairwise_distinct(a)) throw Infeasible("solve_greedy: matrix has duplicate rows");

  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t col_stride = kernels::words_for_bits(m);
  const std::vector<kernels::Word> columns = a.transposed_words();
  auto column = [&](std::size_t c) { return kernels::ConstWords{columns.data() + c * col_stride, col_stride}; };

  // Rows that agree on every chosen column, as packed row masks. Only classes
  // with at least two rows are kept.
  std::vector<std::vector<kernels::Word>> classes;
  if (m > 1) {
    std::vector<kernels::Word> all(col_stride, 0);
    for (std::size_t i = 0; i < m; ++i) kernels::set_bit(all, i);
    classes.push_back(std::move(all));
  }

  std::vector<bool> chosen(n, false);
  std::vector<std::size_t> picked;
  while (!classes.empty()) {
    std::size_t best_col = n;
    std::uint64_t best_gain = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (chosen[c]) continue;
      std::uint64_t gain = 0;
      for (const auto& cls : classes) {
        const std::uint64_t size = kernels::popcount(cls);
        const std::uint64_t ones = kernels::popcount_and(column(c), cls);
        gain += ones * (size - ones);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_col = c;
      }
    }
    // Distinct rows guarantee some column splits every remaining class.
    if (best_col == n) throw Infeasible("solve_greedy: no separating column left");
    chosen[best_col] = true;
    picked.push_back(best_col + 1);

    std::vector<std::vector<kernels::Word>> next;
    for (const auto& cls : classes) {
      std::vector<kernels::Word> ones(col_stride), zeros(col_stride);
      const auto col = column(best_col);
      for (std::size_t w = 0; w < col_stride; ++w) {
        ones[w] = cls[w] & col[w];
        zeros[w] = cls[w] & ~col[w];
      }
      if (kernels::popcount(ones) > 1) next.push_back(std::move(ones));
      if (kernels::popcount(zeros) > 1) next.push_back(std::move(zeros));
    }
    classes = std::move(next);
  }
  return ColumnSet(std::move(picked));
}

}  // namespace dv
