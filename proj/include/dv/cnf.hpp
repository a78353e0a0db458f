#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dv {

// Signed 1-based variable index: +v is x_v, -v is its negation.
using Literal = int;
using Clause = std::array<Literal, 3>;

// 3CNF formula. Repeated literals, repeated clauses and tautologies are all
// allowed; every clause has exactly three literals.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  // Throws InvalidArgument on literal 0 or a variable outside [1, num_vars].
  void validate() const;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  // 1-based.
  bool value(std::size_t var) const { return values_.at(var - 1); }
  void set(std::size_t var, bool v) { values_.at(var - 1) = v; }
  bool satisfies(Literal lit) const { return lit > 0 ? value(static_cast<std::size_t>(lit)) : !value(static_cast<std::size_t>(-lit)); }
  const std::vector<bool>& values() const noexcept { return values_; }

  // DIMACS-style "v 1 -2 3 0".
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> values_;
};

// DIMACS CNF. Throws ParseError (with line number) on a malformed header, a
// clause with other than three literals, or a variable out of range.
CnfFormula parse_dimacs(std::string_view text);

// Canonical DIMACS: "c format v1", header, one "a b c 0" line per clause.
std::string format_dimacs(const CnfFormula& f);

// Throws InvalidArgument when the assignment covers fewer than num_vars
// variables. Extra variables are ignored.
bool evaluate(const CnfFormula& f, const Assignment& a);

constexpr std::size_t kDefaultSatVarCap = 24;

// First satisfying assignment in lexicographic order (x_1 most significant,
// false before true). Throws ResourceLimit when num_vars > var_cap.
std::optional<Assignment> solve_sat_brute_force(const CnfFormula& f, std::size_t var_cap = kDefaultSatVarCap);

}  // namespace dv
