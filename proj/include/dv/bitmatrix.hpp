#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dv/kernels.hpp"

namespace dv {

// Strictly ascending set of 1-based column indices.
class ColumnSet {
 public:
  ColumnSet() = default;
  // Sorts the input; throws InvalidArgument on duplicates or index 0.
  explicit ColumnSet(std::vector<std::size_t> columns);
  ColumnSet(std::initializer_list<std::size_t> columns)
      : ColumnSet(std::vector<std::size_t>(columns)) {}

  // Every index from 1 to n.
  static ColumnSet all(std::size_t n);

  const std::vector<std::size_t>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return columns_.size(); }
  bool empty() const noexcept { return columns_.empty(); }
  bool contains(std::size_t column) const;
  std::size_t max() const noexcept { return columns_.empty() ? 0 : columns_.back(); }
  auto begin() const noexcept { return columns_.begin(); }
  auto end() const noexcept { return columns_.end(); }

  // Lexicographic on the ascending sequences.
  friend auto operator<=>(const ColumnSet&, const ColumnSet&) = default;

  // "1 4 7"; empty string for the empty set.
  std::string to_string() const;

 private:
  std::vector<std::size_t> columns_;
};

// Immutable m x n matrix over {0,1}, rows bit-packed into 64-bit words.
// All accessors take 1-based indices.
class BinaryMatrix {
 public:
  // rows must be non-empty and rectangular with entries in {0,1}.
  explicit BinaryMatrix(const std::vector<std::vector<std::uint8_t>>& rows);
  BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows);
  // Rows as strings over '0'/'1'.
  static BinaryMatrix from_strings(const std::vector<std::string>& rows);
  // Takes ownership of already-packed rows (padding bits must be zero).
  static BinaryMatrix from_packed(std::size_t m, std::size_t n, std::vector<kernels::Word> words);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool at(std::size_t row, std::size_t col) const;
  kernels::ConstWords row_words(std::size_t row) const;
  std::string row_string(std::size_t row) const;

  // Column-major packing: bit (i-1) of column j's words is A[i,j].
  std::vector<kernels::Word> transposed_words() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  BinaryMatrix(std::size_t m, std::size_t n);
  kernels::Word* row_ptr(std::size_t row0) { return words_.data() + row0 * stride_; }

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<kernels::Word> words_;
};

bool rows_pairwise_distinct(const BinaryMatrix& a);

// A[*, K]. Throws InvalidArgument for empty K or indices beyond n.
BinaryMatrix restrict(const BinaryMatrix& a, const ColumnSet& k);

// Columns where rows i and j disagree. Throws InvalidArgument when i == j or
// either row is out of range.
ColumnSet difference_set(const BinaryMatrix& a, std::size_t i, std::size_t j);

// Packed column mask for K (bit c-1 set for each c in K).
std::vector<kernels::Word> column_mask(const BinaryMatrix& a, const ColumnSet& k);

}  // namespace dv
