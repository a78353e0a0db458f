#include "dv/bitmatrix.hpp"

#include <algorithm>
#include <numeric>

#include "dv/errors.hpp"

namespace dv {

ColumnSet::ColumnSet(std::vector<std::size_t> columns) : columns_(std::move(columns)) {
  std::sort(columns_.begin(), columns_.end());
  if (!columns_.empty() && columns_.front() == 0)
    throw InvalidArgument("column indices are 1-based; got 0");
  if (std::adjacent_find(columns_.begin(), columns_.end()) != columns_.end())
    throw InvalidArgument("duplicate column index in column set");
}

ColumnSet ColumnSet::all(std::size_t n) {
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{1});
  return ColumnSet(std::move(cols));
}

bool ColumnSet::contains(std::size_t column) const {
  return std::binary_search(columns_.begin(), columns_.end(), column);
}

std::string ColumnSet::to_string() const {
  std::string out;
  for (std::size_t c : columns_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c);
  }
  return out;
}

BinaryMatrix::BinaryMatrix(std::size_t m, std::size_t n)
    : m_(m), n_(n), stride_(kernels::words_for_bits(n)), words_(m * stride_, 0) {
  if (m == 0 || n == 0) throw InvalidArgument("matrix dimensions must be positive");
}

BinaryMatrix::BinaryMatrix(const std::vector<std::vector<std::uint8_t>>& rows)
    : BinaryMatrix(rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t i = 0; i < m_; ++i) {
    if (rows[i].size() != n_) throw InvalidArgument("ragged matrix rows");
    kernels::MutWords w{row_ptr(i), stride_};
    for (std::size_t j = 0; j < n_; ++j) {
      if (rows[i][j] > 1) throw InvalidArgument("matrix entries must be 0 or 1");
      if (rows[i][j] != 0) kernels::set_bit(w, j);
    }
  }
}

namespace {

std::vector<std::vector<std::uint8_t>> to_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto& r : rows) {
    std::vector<std::uint8_t> row;
    for (int v : r) {
      if (v != 0 && v != 1) throw InvalidArgument("matrix entries must be 0 or 1");
      row.push_back(static_cast<std::uint8_t>(v));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

BinaryMatrix::BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : BinaryMatrix(to_rows(rows)) {}

BinaryMatrix BinaryMatrix::from_strings(const std::vector<std::string>& rows) {
  BinaryMatrix a(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < a.m_; ++i) {
    if (rows[i].size() != a.n_) throw InvalidArgument("ragged matrix rows");
    kernels::MutWords w{a.row_ptr(i), a.stride_};
    for (std::size_t j = 0; j < a.n_; ++j) {
      char ch = rows[i][j];
      if (ch == '1')
        kernels::set_bit(w, j);
      else if (ch != '0')
        throw InvalidArgument("matrix entries must be '0' or '1'");
    }
  }
  return a;
}

BinaryMatrix BinaryMatrix::from_packed(std::size_t m, std::size_t n, std::vector<kernels::Word> words) {
  BinaryMatrix a(m, n);
  if (words.size() != a.words_.size()) throw InvalidArgument("packed word count does not match dimensions");
  if (n % 64 != 0) {
    const kernels::Word tail = ~((kernels::Word{1} << (n % 64)) - 1);
    for (std::size_t i = 0; i < m; ++i)
      if ((words[i * a.stride_ + a.stride_ - 1] & tail) != 0)
        throw InvalidArgument("packed row has bits beyond column n");
  }
  a.words_ = std::move(words);
  return a;
}

bool BinaryMatrix::at(std::size_t row, std::size_t col) const {
  if (row < 1 || row > m_ || col < 1 || col > n_) throw InvalidArgument("matrix index out of range");
  return kernels::test_bit(row_words(row), col - 1);
}

kernels::ConstWords BinaryMatrix::row_words(std::size_t row) const {
  return {words_.data() + (row - 1) * stride_, stride_};
}

std::string BinaryMatrix::row_string(std::size_t row) const {
  std::string s(n_, '0');
  auto w = row_words(row);
  for (std::size_t j = 0; j < n_; ++j)
    if (kernels::test_bit(w, j)) s[j] = '1';
  return s;
}

std::vector<kernels::Word> BinaryMatrix::transposed_words() const {
  const std::size_t col_stride = kernels::words_for_bits(m_);
  std::vector<kernels::Word> out(n_ * col_stride, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    kernels::for_each_set_bit(row_words(i + 1), [&](std::size_t j) {
      out[j * col_stride + (i >> 6)] |= kernels::Word{1} << (i & 63);
    });
  }
  return out;
}

bool rows_pairwise_distinct(const BinaryMatrix& a) {
  const std::size_t m = a.rows();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    auto rx = a.row_words(x), ry = a.row_words(y);
    return std::lexicographical_compare(rx.begin(), rx.end(), ry.begin(), ry.end());
  });
  for (std::size_t i = 1; i < m; ++i)
    if (!kernels::any_xor(a.row_words(order[i - 1]), a.row_words(order[i]))) return false;
  return true;
}

BinaryMatrix restrict(const BinaryMatrix& a, const ColumnSet& k) {
  if (k.empty()) throw InvalidArgument("restrict: column set is empty");
  if (k.max() > a.cols()) throw InvalidArgument("restrict: column index exceeds matrix width");
  const std::size_t stride = kernels::words_for_bits(k.size());
  std::vector<kernels::Word> words(a.rows() * stride, 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto src = a.row_words(i + 1);
    kernels::MutWords dst{words.data() + i * stride, stride};
    std::size_t out_col = 0;
    for (std::size_t c : k) {
      if (kernels::test_bit(src, c - 1)) kernels::set_bit(dst, out_col);
      ++out_col;
    }
  }
  return BinaryMatrix::from_packed(a.rows(), k.size(), std::move(words));
}

ColumnSet difference_set(const BinaryMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) throw InvalidArgument("difference_set: rows must differ");
  if (i < 1 || j < 1 || i > a.rows() || j > a.rows()) throw InvalidArgument("difference_set: row out of range");
  std::vector<kernels::Word> diff(a.words_per_row());
  kernels::xor_into(a.row_words(i), a.row_words(j), diff);
  std::vector<std::size_t> cols;
  kernels::for_each_set_bit(diff, [&](std::size_t bit) { cols.push_back(bit + 1); });
  return ColumnSet(std::move(cols));
}

std::vector<kernels::Word> column_mask(const BinaryMatrix& a, const ColumnSet& k) {
  if (k.max() > a.cols()) throw InvalidArgument("column index exceeds matrix width");
  std::vector<kernels::Word> mask(a.words_per_row(), 0);
  for (std::size_t c : k) kernels::set_bit(mask, c - 1);
  return mask;
}

}  // namespace dv
