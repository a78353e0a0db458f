#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dv/bitmatrix.hpp"

namespace dv {

// One Distinct Vectors instance (A, k). budget_k == 0 asks for the minimum.
struct DvInstance {
  BinaryMatrix matrix;
  std::size_t budget_k = 0;

  DvInstance(BinaryMatrix a, std::size_t k);
};

// Instance text format:
//   c format v1
//   p dv <m> <n> <k>
//   <m lines of exactly n characters from {0,1}>
// Lines starting with "c " (or a bare "c") are comments anywhere in the file.
DvInstance parse_instance(std::string_view text);
DvInstance read_instance_file(const std::string& path);
std::string format_instance(const DvInstance& inst);

// Solution text format: one line of ascending 1-based indices separated by
// single spaces. No non-comment line at all means "no solution".
std::optional<ColumnSet> parse_solution(std::string_view text);
std::optional<ColumnSet> read_solution_file(const std::string& path);
std::string format_solution(const std::optional<ColumnSet>& k);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

namespace detail {
// True for comment lines; throws ParseError for "c format vN" with N != 1.
bool is_comment_line(std::string_view line, std::size_t line_no);
}  // namespace detail

}  // namespace dv
