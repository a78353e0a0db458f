#include "dv/reduction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "dv/errors.hpp"

namespace dv {
namespace {

constexpr std::size_t kMaxRPrime = 40;

std::size_t log2_exact(std::size_t x) { return static_cast<std::size_t>(std::countr_zero(x)); }

std::size_t var_of(Literal lit) { return static_cast<std::size_t>(std::abs(lit)); }

}  // namespace

PaddedFormula pad_formula(const CnfFormula& f) {
  if (f.num_vars == 0 || f.clauses.empty()) throw InvalidArgument("pad_formula: need r >= 1 and s >= 1");
  f.validate();
  PaddedFormula out;
  out.original_r = f.num_vars;
  out.original_s = f.clauses.size();
  out.formula = f;
  out.formula.num_vars = std::max<std::size_t>(2, std::bit_ceil(f.num_vars));
  out.ell = static_cast<std::size_t>(std::bit_width(f.clauses.size()));  // least ell with 2^ell - 1 >= s
  const std::size_t s_padded = (std::size_t{1} << out.ell) - 1;
  while (out.formula.clauses.size() < s_padded) out.formula.clauses.push_back(f.clauses.front());
  return out;
}

BundlePlan make_bundle_plan(const PaddedFormula& padded) {
  const std::size_t r = padded.formula.num_vars;
  if (r < 2 || !std::has_single_bit(r)) throw InvalidArgument("make_bundle_plan: r must be a power of two >= 2");
  BundlePlan plan;
  plan.num_bundles = log2_exact(r);
  plan.r_prime = (r + plan.num_bundles - 1) / plan.num_bundles;
  if (plan.r_prime > kMaxRPrime)
    throw ResourceLimit("bundle size " + std::to_string(plan.r_prime) + " is too large to enumerate assignments");
  plan.rho = std::uint64_t{1} << plan.r_prime;
  for (std::size_t i = 0; i < plan.num_bundles; ++i) {
    std::vector<std::size_t> members;
    for (std::size_t v = i * plan.r_prime + 1; v <= std::min(r, (i + 1) * plan.r_prime); ++v) members.push_back(v);
    if (members.empty()) throw InvalidArgument("make_bundle_plan: empty bundle");
    std::vector<std::size_t> slots(plan.r_prime);
    for (std::size_t j = 0; j < plan.r_prime; ++j) slots[j] = members[j % members.size()];
    plan.members.push_back(std::move(members));
    plan.slots.push_back(std::move(slots));
  }
  return plan;
}

ReductionMap::ReductionMap(PaddedFormula padded, BundlePlan plan)
    : padded_(std::move(padded)), plan_(std::move(plan)), bundle_of_var_(padded_.formula.num_vars + 1, 0) {
  for (std::size_t i = 0; i < plan_.members.size(); ++i)
    for (std::size_t v : plan_.members[i]) bundle_of_var_.at(v) = i + 1;
}

std::pair<std::size_t, std::size_t> ReductionMap::bundle_col_range(std::size_t bundle) const {
  if (bundle < 1 || bundle > log_r()) throw InvalidArgument("bundle index out of range");
  const std::size_t rho_sz = static_cast<std::size_t>(rho());
  return {ell() + (bundle - 1) * rho_sz + 1, ell() + bundle * rho_sz};
}

std::size_t ReductionMap::bundle_column(std::size_t bundle, std::uint64_t p) const {
  if (p < 1 || p > rho()) throw InvalidArgument("assignment position out of range");
  return bundle_col_range(bundle).first + static_cast<std::size_t>(p) - 1;
}

std::size_t ReductionMap::bundle_of_column(std::size_t column) const {
  if (column < 1 || column > num_cols()) throw InvalidArgument("column out of range");
  if (column <= ell()) return 0;
  return (column - ell() - 1) / static_cast<std::size_t>(rho()) + 1;
}

std::size_t ReductionMap::bundle_of_variable(std::size_t var) const {
  if (var < 1 || var >= bundle_of_var_.size()) throw InvalidArgument("variable out of range");
  return bundle_of_var_[var];
}

std::vector<bool> ReductionMap::assignment_of(std::size_t bundle, std::uint64_t p) const {
  if (bundle < 1 || bundle > log_r()) throw InvalidArgument("bundle index out of range");
  if (p < 1 || p > rho()) throw InvalidArgument("assignment position out of range");
  const auto& members = plan_.members[bundle - 1];
  const std::size_t d = members.size();
  const std::uint64_t counter = (p - 1) & ((std::uint64_t{1} << d) - 1);
  std::vector<bool> values(d);
  for (std::size_t j = 0; j < d; ++j) values[j] = (counter >> (d - 1 - j)) & 1U;
  return values;
}

std::uint64_t ReductionMap::position_of(std::size_t bundle, const Assignment& values) const {
  if (bundle < 1 || bundle > log_r()) throw InvalidArgument("bundle index out of range");
  const auto& members = plan_.members[bundle - 1];
  std::uint64_t counter = 0;
  for (std::size_t v : members) counter = (counter << 1) | (values.value(v) ? 1U : 0U);
  return counter + 1;
}

std::pair<std::size_t, bool> ReductionMap::clause_of_row(std::size_t row) const {
  if (row <= log_r() + 1 || row > num_rows()) throw InvalidArgument("row is not a clause row");
  const std::size_t offset = row - log_r();  // 2q for the odd row, 2q + 1 for the even row
  return {offset / 2, offset % 2 == 0};
}

ReductionMap make_reduction_map(const CnfFormula& f, const ReductionOptions& opts) {
  PaddedFormula padded = pad_formula(f);
  BundlePlan plan = make_bundle_plan(padded);
  if (plan.rho > opts.max_cols / plan.num_bundles)
    throw ResourceLimit("reduction needs " + std::to_string(plan.rho) + " x " + std::to_string(plan.num_bundles) +
                        " bundle columns, above the cap of " + std::to_string(opts.max_cols));
  return ReductionMap(std::move(padded), std::move(plan));
}

std::vector<std::uint8_t> sat_table(const ReductionMap& map, std::size_t bundle, std::size_t clause) {
  if (bundle < 1 || bundle > map.log_r()) throw InvalidArgument("sat_table: bundle index out of range");
  if (clause < 1 || clause > map.formula().clauses.size()) throw InvalidArgument("sat_table: clause out of range");
  const auto& members = map.plan().members[bundle - 1];
  const std::size_t d = members.size();

  // (bit position in the counter, wanted value) for literals over this bundle.
  std::vector<std::pair<std::size_t, bool>> lits;
  for (Literal lit : map.formula().clauses[clause - 1]) {
    if (map.bundle_of_variable(var_of(lit)) != bundle) continue;
    const auto it = std::lower_bound(members.begin(), members.end(), var_of(lit));
    const auto j = static_cast<std::size_t>(it - members.begin());
    lits.emplace_back(d - 1 - j, lit > 0);
  }

  const std::uint64_t period = std::uint64_t{1} << d;
  std::vector<std::uint8_t> row(static_cast<std::size_t>(map.rho()), 0);
  for (std::uint64_t p = 0; p < map.rho(); ++p) {
    const std::uint64_t counter = p & (period - 1);
    for (const auto& [bit, want] : lits) {
      if ((((counter >> bit) & 1U) != 0) == want) {
        row[static_cast<std::size_t>(p)] = 1;
        break;
      }
    }
  }
  return row;
}

BinaryMatrix build_matrix(const ReductionMap& map) {
  const std::size_t m = map.num_rows(), n = map.num_cols(), ell = map.ell();
  const std::size_t stride = kernels::words_for_bits(n);
  std::vector<kernels::Word> words(m * stride, 0);
  auto row = [&](std::size_t r1) { return kernels::MutWords{words.data() + (r1 - 1) * stride, stride}; };

  // Row 1 stays zero; row i + 1 marks bundle i's columns.
  for (std::size_t i = 1; i <= map.log_r(); ++i) {
    auto [lo, hi] = map.bundle_col_range(i);
    for (std::size_t c = lo; c <= hi; ++c) kernels::set_bit(row(i + 1), c - 1);
  }
  const std::size_t s = map.formula().clauses.size();
  for (std::size_t q = 1; q <= s; ++q) {
    const std::size_t odd = map.log_r() + 2 * q, even = odd + 1;
    for (std::size_t j = 1; j <= ell; ++j) {
      if ((q >> (ell - j)) & 1U) {
        kernels::set_bit(row(odd), j - 1);
        kernels::set_bit(row(even), j - 1);
      }
    }
    for (std::size_t i = 1; i <= map.log_r(); ++i) {
      const auto bits = sat_table(map, i, q);
      const std::size_t base = map.bundle_col_range(i).first;
      for (std::size_t p = 0; p < bits.size(); ++p)
        if (bits[p]) kernels::set_bit(row(odd), base + p - 1);
    }
  }
  return BinaryMatrix::from_packed(m, n, std::move(words));
}

Reduction build_instance(const CnfFormula& f, const ReductionOptions& opts) {
  ReductionMap map = make_reduction_map(f, opts);
  BinaryMatrix a = build_matrix(map);
  const std::size_t k = map.budget();
  return Reduction{DvInstance(std::move(a), k), std::move(map)};
}

ColumnSet encode_solution(const ReductionMap& map, const Assignment& alpha) {
  const std::size_t r = map.formula().num_vars;
  if (alpha.size() < map.padded().original_r)
    throw InvalidArgument("encode_solution: assignment does not cover the formula's variables");
  std::vector<bool> values = alpha.values();
  values.resize(std::max(values.size(), r), false);
  const Assignment full(std::move(values));
  if (!evaluate(map.formula(), full)) throw InvalidArgument("encode_solution: assignment does not satisfy the formula");

  std::vector<std::size_t> cols;
  for (std::size_t j = 1; j <= map.ell(); ++j) cols.push_back(j);
  for (std::size_t i = 1; i <= map.log_r(); ++i) cols.push_back(map.bundle_column(i, map.position_of(i, full)));
  return ColumnSet(std::move(cols));
}

Assignment decode_solution(const ReductionMap& map, const ColumnSet& k) {
  if (k.max() > map.num_cols()) throw InvalidArgument("decode_solution: column beyond matrix width");
  for (std::size_t j = 1; j <= map.ell(); ++j)
    if (!k.contains(j)) throw StructureError("consistency column " + std::to_string(j) + " missing from K");

  std::vector<std::size_t> chosen(map.log_r() + 1, 0);
  for (std::size_t c : k) {
    const std::size_t b = map.bundle_of_column(c);
    if (b == 0) continue;
    if (chosen[b] != 0) throw StructureError("bundle " + std::to_string(b) + " has more than one column in K");
    chosen[b] = c;
  }

  const std::size_t r = map.formula().num_vars;
  Assignment alpha(std::vector<bool>(r, false));
  for (std::size_t i = 1; i <= map.log_r(); ++i) {
    if (chosen[i] == 0) throw StructureError("bundle " + std::to_string(i) + " has no column in K");
    const std::uint64_t p = chosen[i] - map.bundle_col_range(i).first + 1;
    const auto values = map.assignment_of(i, p);
    const auto& members = map.plan().members[i - 1];
    for (std::size_t j = 0; j < members.size(); ++j)
      if (members[j] <= map.padded().original_r) alpha.set(members[j], values[j]);
  }
  if (!evaluate(map.formula(), alpha))
    throw StructureError("decoded assignment does not satisfy the formula; K is not a solution");
  return alpha;
}

CostReport cost_report(const CnfFormula& f) {
  const PaddedFormula padded = pad_formula(f);
  CostReport c;
  c.original_r = padded.original_r;
  c.original_s = padded.original_s;
  c.r = padded.formula.num_vars;
  c.s = padded.formula.clauses.size();
  c.ell = padded.ell;
  c.log_r = log2_exact(c.r);
  c.r_prime = (c.r + c.log_r - 1) / c.log_r;
  if (c.r_prime > 62) throw ResourceLimit("cost_report: rho = 2^" + std::to_string(c.r_prime) + " overflows");
  c.rho = std::uint64_t{1} << c.r_prime;
  c.n = c.ell + c.rho * c.log_r;
  c.m = 1 + c.log_r + 2 * c.s;
  c.k = c.ell + c.log_r;
  c.k_bound = std::log2(2.0 * static_cast<double>(c.s)) + std::log2(static_cast<double>(c.r));
  if (static_cast<double>(c.k) > c.k_bound + 1e-9) throw std::logic_error("cost_report: k exceeds log(2s) + log(r)");
  return c;
}

std::string format_cost_report(const CostReport& c) {
  std::ostringstream out;
  out << "orig_r " << c.original_r << '\n'
      << "orig_s " << c.original_s << '\n'
      << "r " << c.r << '\n'
      << "s " << c.s << '\n'
      << "ell " << c.ell << '\n'
      << "logr " << c.log_r << '\n'
      << "rprime " << c.r_prime << '\n'
      << "rho " << c.rho << '\n'
      << "n " << c.n << '\n'
      << "m " << c.m << '\n'
      << "k " << c.k << '\n';
  char bound[32];
  std::snprintf(bound, sizeof bound, "%.6f", c.k_bound);
  out << "k_bound " << bound << '\n';
  return out.str();
}

std::string format_metadata(const ReductionMap& map) {
  std::ostringstream out;
  out << "c format v1\n"
      << "ell " << map.ell() << '\n'
      << "logr " << map.log_r() << '\n'
      << "rprime " << map.plan().r_prime << '\n'
      << "rho " << map.rho() << '\n'
      << "orig " << map.padded().original_r << ' ' << map.padded().original_s << '\n';
  for (std::size_t i = 0; i < map.plan().slots.size(); ++i) {
    out << "bundle " << (i + 1);
    for (std::size_t v : map.plan().slots[i]) out << ' ' << v;
    out << '\n';
  }
  out << "formula\n" << format_dimacs(map.formula());
  return out.str();
}

ReductionMap parse_metadata(std::string_view text) {
  std::size_t ell = 0, logr = 0, rprime = 0, orig_r = 0, orig_s = 0;
  std::uint64_t rho = 0;
  bool seen_ell = false, seen_logr = false, seen_rprime = false, seen_rho = false, seen_orig = false;
  std::vector<std::vector<std::size_t>> bundles;

  std::size_t pos = 0, line_no = 0;
  bool in_formula = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (detail::is_comment_line(line, line_no) || line.empty()) continue;
    if (line == "formula") {
      in_formula = true;
      break;
    }
    std::istringstream in{std::string(line)};
    std::string key;
    in >> key;
    auto need = [&](auto& v) {
      if (!(in >> v)) throw ParseError(line_no, "bad value for '" + key + "'");
    };
    if (key == "ell") {
      need(ell);
      seen_ell = true;
    } else if (key == "logr") {
      need(logr);
      seen_logr = true;
    } else if (key == "rprime") {
      need(rprime);
      seen_rprime = true;
    } else if (key == "rho") {
      need(rho);
      seen_rho = true;
    } else if (key == "orig") {
      need(orig_r);
      need(orig_s);
      seen_orig = true;
    } else if (key == "bundle") {
      std::size_t idx = 0;
      need(idx);
      if (idx != bundles.size() + 1) throw ParseError(line_no, "bundle lines out of order");
      std::vector<std::size_t> slots;
      std::size_t v;
      while (in >> v) slots.push_back(v);
      bundles.push_back(std::move(slots));
    } else {
      throw ParseError(line_no, "unknown metadata key '" + key + "'");
    }
    std::string extra;
    if (key != "bundle" && (in >> extra)) throw ParseError(line_no, "trailing data after '" + key + "'");
  }
  if (!in_formula) throw ParseError(line_no, "metadata has no 'formula' section");
  if (!(seen_ell && seen_logr && seen_rprime && seen_rho && seen_orig))
    throw ParseError(line_no, "metadata is missing one of ell/logr/rprime/rho/orig");

  PaddedFormula padded;
  padded.formula = parse_dimacs(text.substr(pos));
  padded.original_r = orig_r;
  padded.original_s = orig_s;
  padded.ell = ell;
  const std::size_t r = padded.formula.num_vars, s = padded.formula.clauses.size();
  if (r < 2 || !std::has_single_bit(r) || ell == 0 || ell >= 64 || s != (std::size_t{1} << ell) - 1 ||
      orig_r == 0 || orig_r > r || orig_s == 0 || orig_s > s)
    throw ParseError(line_no, "metadata formula is not in padded form");

  BundlePlan plan = make_bundle_plan(padded);
  if (plan.num_bundles != logr || plan.r_prime != rprime || plan.rho != rho || plan.slots != bundles)
    throw ParseError(line_no, "metadata bundle layout does not match the padded formula");
  return ReductionMap(std::move(padded), std::move(plan));
}

Separation classify_separation(const ReductionMap& map, const BinaryMatrix& a, const ColumnSet& k,
                               std::size_t row_i, std::size_t row_j) {
  if (row_i == row_j) throw InvalidArgument("classify_separation: rows must differ");
  const bool i1 = map.is_i1_row(row_i), j1 = map.is_i1_row(row_j);
  auto differs_at = [&](std::size_t c) { return a.at(row_i, c) != a.at(row_j, c); };

  if (i1 && j1) {
    for (std::size_t c : k)
      if (c > map.ell() && differs_at(c)) return Separation::bundle_indicator;
    return Separation::none;
  }
  for (std::size_t c : k)
    if (c <= map.ell() && differs_at(c)) return Separation::consistency_prefix;
  if (i1 || j1) return Separation::none;

  auto [qi, odd_i] = map.clause_of_row(row_i);
  auto [qj, odd_j] = map.clause_of_row(row_j);
  if (qi != qj || odd_i == odd_j) return Separation::none;
  const std::size_t odd_row = odd_i ? row_i : row_j;
  for (std::size_t c : k)
    if (c > map.ell() && a.at(odd_row, c)) return Separation::satisfied_clause;
  return Separation::none;
}

}  // namespace dv
