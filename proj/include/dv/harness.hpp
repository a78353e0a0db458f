#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dv/bitmatrix.hpp"
#include "dv/cnf.hpp"

namespace dv {

struct IntRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  IntRange formula_r{1, 8};
  IntRange clause_count{1, 7};
  std::size_t trials = 1000;
  IntRange matrix_m{2, 10};
  IntRange matrix_n{1, 14};
  std::uint64_t node_limit = 100'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
  // Trials in flight at once.
  unsigned workers = 1;
  // Threads inside each exact solve.
  unsigned solver_workers = 1;
  // Formulas whose padded r exceeds this are rejected up front.
  std::size_t max_padded_r = 8;
  // Written with the offending formula on the first failing trial.
  std::string replay_path;

  // Throws InvalidArgument for empty or zero-based ranges.
  void validate() const;
};

// Deterministic in (cfg.seed, index).
CnfFormula gen_random_formula(const CampaignConfig& cfg, std::uint64_t index);
// Random matrix with pairwise distinct rows; m is clamped to 2^n.
BinaryMatrix gen_random_matrix(const CampaignConfig& cfg, std::uint64_t index);

struct EquivalenceTrial {
  std::size_t index = 0;
  bool sat = false;
  bool dv = false;
  bool ok = false;
  double ms = 0.0;
  std::string solution;  // solver's column set, empty when dv is false
  std::string detail;    // first failed check
  CnfFormula formula;
};

// Runs every reduction check on one formula: SAT oracle vs exact DV verdict,
// instance validity and size, lower bound, encode/decode round trips and the
// proof's case analysis on the encoded solution.
EquivalenceTrial check_formula(const CnfFormula& f, const CampaignConfig& cfg, std::size_t index = 0);

struct TimingSummary {
  double p50 = 0, p90 = 0, p99 = 0, max = 0;
};

struct EquivalenceReport {
  std::vector<EquivalenceTrial> trials;
  std::size_t mismatches = 0;
  TimingSummary timing;
  std::string replay;  // replay file contents for the first failure

  // "trial <i> sat=<0|1> dv=<0|1> ok=<0|1> ms=<t>" per trial.
  std::string machine_lines() const;
  // Timing-free listing including solutions, for determinism checks.
  std::string fingerprint() const;
  std::string summary() const;
};

EquivalenceReport run_equivalence_campaign(const CampaignConfig& cfg);

struct OracleTrial {
  std::size_t index = 0;
  std::size_t m = 0, n = 0;
  std::vector<std::string> outcomes;  // exact solver, one per k = 0..n
  bool ok = false;
  double ms = 0.0;
  std::string detail;
};

struct OracleReport {
  std::vector<OracleTrial> trials;
  std::size_t divergences = 0;
  TimingSummary timing;

  std::string fingerprint() const;
  std::string summary() const;
};

// Exact vs brute force, every k in 0..n, on cfg.trials random matrices.
// Also checks soundness, the lower bound and greedy validity.
OracleReport run_oracle_campaign(const CampaignConfig& cfg);

struct BenchRow {
  std::string id;
  std::size_t m = 0, n = 0, k = 0;
  std::string outcome;  // exact solver
  std::uint64_t nodes = 0;
  double exact_ms = 0, brute_ms = 0, greedy_ms = 0;
  std::string brute;  // "agree", "DIFFER" or "limit"
  std::size_t greedy_size = 0;
  bool greedy_ge_exact = true;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string table(bool with_timing = true) const;
};

// cfg.trials random matrices (k = 0) followed by cfg.trials reduced instances.
BenchReport run_solver_bench(const CampaignConfig& cfg);

}  // namespace dv
