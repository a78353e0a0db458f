#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dv/bitmatrix.hpp"
#include "dv/cnf.hpp"
#include "dv/instance.hpp"

// 3SAT -> Distinct Vectors. The constructed matrix has three column groups:
// ell = log(s+1) consistency columns holding a clause index in binary, then
// one block of rho = 2^r' columns per variable bundle, one column per truth
// assignment of that bundle. Rows: an all-zero row, one indicator row per
// bundle, then per clause q an "odd" row bin(q) + sat(q) and an "even" row
// bin(q) + zeros. Budget k = ell + log r.

namespace dv {

// Formula normalised so that r is a power of two (r >= 2) and s = 2^ell - 1.
struct PaddedFormula {
  CnfFormula formula;
  std::size_t original_r = 0;
  std::size_t original_s = 0;
  std::size_t ell = 0;
};

// Appends unused variables and copies of the first clause. Throws
// InvalidArgument for a formula without variables or clauses.
PaddedFormula pad_formula(const CnfFormula& f);

struct BundlePlan {
  std::size_t num_bundles = 0;  // log r
  std::size_t r_prime = 0;      // ceil(r / log r)
  std::uint64_t rho = 0;        // 2^r'
  // Per bundle: exactly r' variable slots, own variables repeated cyclically.
  std::vector<std::vector<std::size_t>> slots;
  // Per bundle: its distinct variables, ascending.
  std::vector<std::vector<std::size_t>> members;

  friend bool operator==(const BundlePlan&, const BundlePlan&) = default;
};

// Contiguous blocks of r' variables; the last bundle may be short.
BundlePlan make_bundle_plan(const PaddedFormula& padded);

struct ReductionOptions {
  // Cap on rho * log r.
  std::uint64_t max_cols = std::uint64_t{1} << 20;
};

// Everything needed to move solutions between the formula and the matrix.
// Bundle indices, clause indices, positions p and columns are all 1-based.
class ReductionMap {
 public:
  ReductionMap(PaddedFormula padded, BundlePlan plan);

  const PaddedFormula& padded() const noexcept { return padded_; }
  const CnfFormula& formula() const noexcept { return padded_.formula; }
  const BundlePlan& plan() const noexcept { return plan_; }

  std::size_t ell() const noexcept { return padded_.ell; }
  std::size_t log_r() const noexcept { return plan_.num_bundles; }
  std::uint64_t rho() const noexcept { return plan_.rho; }
  std::size_t num_rows() const noexcept { return 1 + log_r() + 2 * formula().clauses.size(); }
  std::size_t num_cols() const noexcept { return ell() + static_cast<std::size_t>(rho()) * log_r(); }
  std::size_t budget() const noexcept { return ell() + log_r(); }

  // Inclusive column range of bundle i.
  std::pair<std::size_t, std::size_t> bundle_col_range(std::size_t bundle) const;
  std::size_t bundle_column(std::size_t bundle, std::uint64_t p) const;
  // Bundle owning column c, or 0 for a consistency column.
  std::size_t bundle_of_column(std::size_t column) const;
  // Bundle whose members include var.
  std::size_t bundle_of_variable(std::size_t var) const;

  // Values for plan().members[bundle-1], in that order. Assignments are a
  // binary counter over the members (lowest variable most significant,
  // false before true), cycled to length rho.
  std::vector<bool> assignment_of(std::size_t bundle, std::uint64_t p) const;
  // Smallest p whose assignment agrees with `values` on the bundle's members.
  std::uint64_t position_of(std::size_t bundle, const Assignment& values) const;

  // Row classification. Rows are 1-based.
  bool is_i1_row(std::size_t row) const noexcept { return row >= 1 && row <= log_r() + 1; }
  // Clause index of an I2 row and whether it is the odd (sat) row.
  std::pair<std::size_t, bool> clause_of_row(std::size_t row) const;

 private:
  PaddedFormula padded_;
  BundlePlan plan_;
  std::vector<std::size_t> bundle_of_var_;
};

// Plan + map without building the matrix. Throws ResourceLimit when rho*log r
// exceeds opts.max_cols.
ReductionMap make_reduction_map(const CnfFormula& f, const ReductionOptions& opts = {});

// sat_i(p, q) for p = 1..rho: 1 iff a literal of clause q over a member of
// bundle i is made true by the bundle's p-th assignment.
std::vector<std::uint8_t> sat_table(const ReductionMap& map, std::size_t bundle, std::size_t clause);

struct Reduction {
  DvInstance instance;
  ReductionMap map;
};

Reduction build_instance(const CnfFormula& f, const ReductionOptions& opts = {});
BinaryMatrix build_matrix(const ReductionMap& map);

// Consistency columns plus, per bundle, the column of the first assignment
// agreeing with alpha. alpha may cover the original or the padded variables.
// Throws InvalidArgument unless alpha satisfies the padded formula.
ColumnSet encode_solution(const ReductionMap& map, const Assignment& alpha);

// Inverse direction. Throws StructureError unless K contains every
// consistency column and exactly one column per bundle, or when the decoded
// assignment does not satisfy the formula. Padding variables are false.
Assignment decode_solution(const ReductionMap& map, const ColumnSet& k);

struct CostReport {
  std::size_t original_r = 0, original_s = 0;
  std::size_t r = 0, s = 0, ell = 0, log_r = 0, r_prime = 0;
  std::uint64_t rho = 0;
  std::uint64_t n = 0, m = 0, k = 0;
  double k_bound = 0.0;  // log2(2s) + log2(r)
};

// Parameters the construction would produce, without building anything.
CostReport cost_report(const CnfFormula& f);
// "key value" per line.
std::string format_cost_report(const CostReport& c);

// Metadata file: ell, logr, rprime, rho, orig, one bundle line per bundle,
// then "formula" followed by the padded formula in canonical DIMACS.
std::string format_metadata(const ReductionMap& map);
// Rebuilds the map and checks every recorded field against it.
ReductionMap parse_metadata(std::string_view text);

// Which argument of the correctness proof separates rows i and j under K.
enum class Separation {
  none,
  bundle_indicator,    // both rows in I1: a bundle column in K where they differ
  consistency_prefix,  // I1 vs I2, or I2 rows of different clauses
  satisfied_clause,    // odd vs even row of one clause: a K column where sat is 1
};

Separation classify_separation(const ReductionMap& map, const BinaryMatrix& a, const ColumnSet& k,
                               std::size_t row_i, std::size_t row_j);

}  // namespace dv
