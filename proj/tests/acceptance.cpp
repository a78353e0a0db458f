// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <bit>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dv/harness.hpp"
#include "dv/reduction.hpp"
#include "dv/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20240611;

struct Result {
  bool pass = true;
  std::string note;
};

bool all_passed = true;

void report(int id, const char* name, const Result& r) {
  all_passed = all_passed && r.pass;
  std::printf("%s criterion %d (%s): %s\n", r.pass ? "PASS" : "FAIL", id, name, r.note.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t count_columns(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string tok; in >> tok;) ++n;
  return n;
}

dv::CampaignConfig equivalence_config() {
  dv::CampaignConfig cfg;
  cfg.seed = kSeed;
  cfg.trials = 1000;
  cfg.formula_r = {1, 8};
  cfg.clause_count = {1, 7};
  return cfg;
}

dv::CampaignConfig oracle_config() {
  dv::CampaignConfig cfg;
  cfg.seed = kSeed;
  cfg.trials = 500;
  cfg.matrix_m = {2, 10};
  cfg.matrix_n = {1, 14};
  return cfg;
}

// Every formula over x1, x2 with one or two clauses.
std::vector<dv::CnfFormula> exhaustive_r2() {
  std::vector<dv::Clause> clauses;
  const int lits[] = {1, -1, 2, -2};
  for (int a : lits)
    for (int b : lits)
      for (int c : lits) clauses.push_back({a, b, c});
  std::vector<dv::CnfFormula> out;
  for (const auto& c : clauses) out.push_back({2, {c}});
  for (const auto& c1 : clauses)
    for (const auto& c2 : clauses) out.push_back({2, {c1, c2}});
  return out;
}

}  // namespace

int main() {
  const auto t_start = Clock::now();

  // Criterion 1 (with the data reused by 4, 6, 7 and 8).
  auto t0 = Clock::now();
  const auto cfg1 = equivalence_config();
  const dv::EquivalenceReport campaign = dv::run_equivalence_campaign(cfg1);
  std::vector<dv::EquivalenceTrial> sweep;
  const auto sweep_formulas = exhaustive_r2();
  for (std::size_t i = 0; i < sweep_formulas.size(); ++i) sweep.push_back(dv::check_formula(sweep_formulas[i], cfg1, i));

  const std::vector<const std::vector<dv::EquivalenceTrial>*> all_trials{&campaign.trials, &sweep};
  std::size_t mismatches = 0, sat_trials = 0, round_trip_failures = 0, invalid = 0;
  for (const auto* trials : all_trials)
    for (const auto& t : *trials) {
      if (t.sat != t.dv) ++mismatches;
      if (t.sat) ++sat_trials;
      if (!t.ok && t.sat == t.dv) {
        if (t.detail.find("duplicate rows") != std::string::npos) ++invalid;
        else ++round_trip_failures;
      }
    }
  {
    Result r;
    r.pass = mismatches == 0 && campaign.trials.size() >= 1000;
    r.note = std::to_string(campaign.trials.size()) + " seeded + " + std::to_string(sweep.size()) +
             " exhaustive r=2 formulas, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(seconds_since(t0)) + " s";
    report(1, "reduction equivalence", r);
  }

  // Criterion 2.
  {
    Result r;
    std::size_t cases = 0;
    for (std::size_t rr : {4, 8, 16})
      for (std::size_t s = 1; s <= 15; ++s) {
        dv::CnfFormula f{rr, std::vector<dv::Clause>(s, dv::Clause{1, -2, 3})};
        const auto c = dv::cost_report(f);
        const auto red = dv::build_instance(f);
        const std::size_t ell = std::bit_width(s);
        std::size_t log_r = std::bit_width(rr) - 1;
        const std::size_t rp = (rr + log_r - 1) / log_r;
        const std::size_t rho = std::size_t{1} << rp;
        const std::size_t padded_s = (std::size_t{1} << ell) - 1;
        const std::size_t n = ell + rho * log_r, m = 1 + log_r + 2 * padded_s, k = ell + log_r;
        ++cases;
        if (c.n != n || c.m != m || c.k != k || red.instance.matrix.cols() != n || red.instance.matrix.rows() != m ||
            red.instance.budget_k != k) {
          r.pass = false;
          r.note += "r=" + std::to_string(rr) + " s=" + std::to_string(s) + " differs; ";
        }
      }
    const auto big = dv::cost_report(dv::CnfFormula{16, std::vector<dv::Clause>(15, dv::Clause{1, 2, 3})});
    if (big.n != 68 || big.m != 35 || big.k != 8) {
      r.pass = false;
      r.note += "(16,15) gave (" + std::to_string(big.n) + "," + std::to_string(big.m) + "," + std::to_string(big.k) + "); ";
    }
    r.note += std::to_string(cases) + " (r,s) pairs exact; (16,15) -> (n=" + std::to_string(big.n) +
              ", m=" + std::to_string(big.m) + ", k=" + std::to_string(big.k) + ")";
    report(2, "exact parameter formulas", r);
  }

  // Criterion 3.
  std::size_t below_bound = 0;
  {
    t0 = Clock::now();
    Result r;
    dv::CampaignConfig cfg;
    cfg.seed = kSeed + 3;
    cfg.formula_r = {1, 4};
    cfg.clause_count = {1, 7};
    std::size_t instances = 0, solutions = 0, violations = 0;
    for (std::uint64_t i = 0; instances < 100 && i < 100000; ++i) {
      const auto f = dv::gen_random_formula(cfg, i);
      if (!dv::solve_sat_brute_force(f)) continue;
      const auto red = dv::build_instance(f);
      const auto& map = red.map;
      ++instances;
      const auto lb = dv::lower_bound(red.instance.matrix);
      for (const auto& k : dv::enumerate_solutions(red.instance.matrix, red.instance.budget_k)) {
        ++solutions;
        if (k.size() < lb) ++below_bound;
        bool good = true;
        for (std::size_t c = 1; c <= map.ell(); ++c) good = good && k.contains(c);
        std::vector<std::size_t> per(map.log_r() + 1, 0);
        for (std::size_t c : k) ++per[map.bundle_of_column(c)];
        for (std::size_t b = 1; b <= map.log_r(); ++b) good = good && per[b] == 1;
        if (!good) ++violations;
      }
    }
    r.pass = instances >= 100 && violations == 0 && solutions > 0;
    r.note = std::to_string(instances) + " satisfiable instances, " + std::to_string(solutions) +
             " solutions enumerated, " + std::to_string(violations) + " violations, " +
             std::to_string(seconds_since(t0)) + " s";
    report(3, "structural lemma", r);
  }

  // Criterion 4.
  {
    Result r;
    r.pass = round_trip_failures == 0;
    r.note = std::to_string(sat_trials) + " satisfiable trials, " + std::to_string(round_trip_failures) + " violations";
    for (const auto* trials : all_trials)
      for (const auto& t : *trials)
        if (!t.ok && t.detail.find("duplicate rows") == std::string::npos) {
          r.note += "; first: trial " + std::to_string(t.index) + " " + t.detail;
          goto done4;
        }
  done4:
    report(4, "round trips", r);
  }

  // Criterion 5.
  t0 = Clock::now();
  const auto cfg5 = oracle_config();
  const dv::OracleReport oracle = dv::run_oracle_campaign(cfg5);
  {
    Result r;
    std::size_t outcomes = 0;
    for (const auto& t : oracle.trials) outcomes += t.outcomes.size();
    r.pass = oracle.divergences == 0 && oracle.trials.size() >= 500;
    r.note = std::to_string(oracle.trials.size()) + " matrices, " + std::to_string(outcomes) + " (matrix,k) pairs, " +
             std::to_string(oracle.divergences) + " divergences, " + std::to_string(seconds_since(t0)) + " s";
    report(5, "solver oracle equivalence", r);
  }

  // Criterion 6.
  {
    Result r;
    std::size_t checked = 0;
    for (const auto* trials : all_trials)
      for (const auto& t : *trials) {
        if (!t.dv) continue;
        ++checked;
        const auto m = dv::cost_report(t.formula).m;
        if (count_columns(t.solution) < static_cast<std::size_t>(std::bit_width(m - 1))) ++below_bound;
      }
    for (const auto& t : oracle.trials) {
      const std::size_t lb = std::bit_width(t.m - 1);
      for (const auto& o : t.outcomes) {
        if (o.rfind("solution", 0) != 0) continue;
        ++checked;
        if (count_columns(o) - 1 < lb) ++below_bound;
      }
    }
    std::string all_rows;
    for (std::size_t tt : {2, 3, 4}) {
      std::vector<std::string> rows;
      for (std::size_t x = 0; x < (std::size_t{1} << tt); ++x) {
        std::string s(tt, '0');
        for (std::size_t b = 0; b < tt; ++b)
          if (x >> (tt - 1 - b) & 1U) s[b] = '1';
        rows.push_back(s);
      }
      const auto a = dv::BinaryMatrix::from_strings(rows);
      const auto rep = dv::solve_exact(dv::DvInstance(a, 0));
      const bool ok = rep.solution && rep.solution->size() == tt &&
                      dv::solve_exact(dv::DvInstance(a, tt - 1)).outcome == dv::Outcome::budget_exceeded;
      if (!ok) r.pass = false;
      all_rows += " t=" + std::to_string(tt) + (ok ? ":ok" : ":WRONG");
    }
    r.pass = r.pass && below_bound == 0;
    r.note = std::to_string(checked) + " solutions checked (plus criterion 3's), " + std::to_string(below_bound) +
             " below ceil(log2 m); all-rows matrices" + all_rows;
    report(6, "lower-bound soundness", r);
  }

  // Criterion 7.
  {
    Result r;
    std::size_t built = 0;
    for (const auto* trials : all_trials)
      for (const auto& t : *trials) {
        ++built;
        if (!dv::rows_pairwise_distinct(dv::build_instance(t.formula).instance.matrix)) ++invalid;
      }
    r.pass = invalid == 0;
    r.note = std::to_string(built) + " built matrices, " + std::to_string(invalid) + " with duplicate rows";
    report(7, "instance validity", r);
  }

  // Criterion 8.
  {
    t0 = Clock::now();
    Result r;
    auto cfg = cfg1;
    cfg.workers = 4;
    cfg.solver_workers = 4;
    const bool eq_same = dv::run_equivalence_campaign(cfg).fingerprint() == campaign.fingerprint();
    auto cfg_b = cfg5;
    cfg_b.workers = 4;
    cfg_b.solver_workers = 4;
    const bool or_same = dv::run_oracle_campaign(cfg_b).fingerprint() == oracle.fingerprint();
    r.pass = eq_same && or_same;
    r.note = std::string("equivalence campaign ") + (eq_same ? "identical" : "DIFFERS") + ", oracle campaign " +
             (or_same ? "identical" : "DIFFERS") + " for workers 1 vs 4, " + std::to_string(seconds_since(t0)) + " s";
    report(8, "determinism", r);
  }

  std::printf("total %.1f s\n", seconds_since(t_start));
  return all_passed ? 0 : 1;
}
