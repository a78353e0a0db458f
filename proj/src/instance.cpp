#include "dv/instance.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "dv/errors.hpp"

namespace dv {

DvInstance::DvInstance(BinaryMatrix a, std::size_t k) : matrix(std::move(a)), budget_k(k) {
  if (budget_k > matrix.cols()) throw InvalidArgument("budget k exceeds column count n");
}

namespace detail {

bool is_comment_line(std::string_view line, std::size_t line_no) {
  if (line != "c" && !line.starts_with("c ")) return false;
  constexpr std::string_view kVersion = "c format v";
  if (line.starts_with(kVersion) && line.substr(kVersion.size()) != "1")
    throw ParseError(line_no, "unsupported format version: " + std::string(line));
  return true;
}

}  // namespace detail

namespace {

// Splits on '\n'. A trailing newline does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line_no, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("expected non-negative integer for ") + what + ", got '" +
                                  std::string(tok) + "'");
  return v;
}

}  // namespace

DvInstance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t idx = 0;
  auto next_content = [&]() -> std::optional<std::size_t> {
    while (idx < lines.size()) {
      std::size_t cur = idx++;
      if (!detail::is_comment_line(lines[cur], cur + 1)) return cur;
    }
    return std::nullopt;
  };

  auto header = next_content();
  if (!header) throw ParseError(0, "missing 'p dv' header");
  const std::size_t header_line = *header + 1;
  auto toks = split_spaces(lines[*header]);
  if (toks.size() != 5 || toks[0] != "p" || toks[1] != "dv")
    throw ParseError(header_line, "expected 'p dv <m> <n> <k>'");
  const std::size_t m = parse_count(toks[2], header_line, "m");
  const std::size_t n = parse_count(toks[3], header_line, "n");
  const std::size_t k = parse_count(toks[4], header_line, "k");
  if (m == 0 || n == 0) throw ParseError(header_line, "m and n must be positive");
  if (k > n) throw ParseError(header_line, "k exceeds n");

  std::vector<std::string> rows;
  rows.reserve(m);
  while (rows.size() < m) {
    auto li = next_content();
    if (!li) throw ParseError(lines.size(), "expected " + std::to_string(m) + " rows, found " +
                                                std::to_string(rows.size()));
    std::string_view row = lines[*li];
    if (row.size() != n)
      throw ParseError(*li + 1, "row has " + std::to_string(row.size()) + " characters, expected " +
                                    std::to_string(n));
    for (char ch : row)
      if (ch != '0' && ch != '1') throw ParseError(*li + 1, "row contains a character other than 0/1");
    rows.emplace_back(row);
  }
  while (auto li = next_content()) {
    if (!lines[*li].empty()) throw ParseError(*li + 1, "unexpected content after matrix rows");
  }
  return DvInstance(BinaryMatrix::from_strings(rows), k);
}

std::string format_instance(const DvInstance& inst) {
  const auto& a = inst.matrix;
  std::string out = "c format v1\n";
  out += "p dv " + std::to_string(a.rows()) + ' ' + std::to_string(a.cols()) + ' ' +
         std::to_string(inst.budget_k) + '\n';
  for (std::size_t i = 1; i <= a.rows(); ++i) {
    out += a.row_string(i);
    out += '\n';
  }
  return out;
}

std::optional<ColumnSet> parse_solution(std::string_view text) {
  const auto lines = split_lines(text);
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_comment_line(lines[i], i + 1)) continue;
    if (found) {
      if (lines[i].empty()) continue;
      throw ParseError(i + 1, "solution must be a single line");
    }
    found = i;
  }
  if (!found) return std::nullopt;
  std::vector<std::size_t> cols;
  for (auto tok : split_spaces(lines[*found])) {
    std::size_t c = parse_count(tok, *found + 1, "column index");
    if (c == 0) throw ParseError(*found + 1, "column indices are 1-based");
    if (!cols.empty() && c <= cols.back()) throw ParseError(*found + 1, "column indices must be strictly ascending");
    cols.push_back(c);
  }
  return ColumnSet(std::move(cols));
}

std::string format_solution(const std::optional<ColumnSet>& k) {
  std::string out = "c format v1\n";
  if (k) out += k->to_string() + '\n';
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InvalidArgument("write failed for '" + path + "'");
}

DvInstance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

std::optional<ColumnSet> read_solution_file(const std::string& path) {
  return parse_solution(read_text_file(path));
}

}  // namespace dv
