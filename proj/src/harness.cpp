#include "dv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "dv/errors.hpp"
#include "dv/instance.hpp"
#include "dv/reduction.hpp"
#include "dv/solver.hpp"

namespace dv {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

// Separate streams keep formula and matrix generation independent.
enum class Stream : std::uint32_t { formula = 1, matrix = 2 };

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Uniform in [lo, hi]. std::uniform_int_distribution differs between
// standard libraries; this does not.
std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::size_t>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + static_cast<std::size_t>(x % span);
}

template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = cursor++; i < count; i = cursor++) body(i);
    });
  for (auto& t : pool) t.join();
}

TimingSummary summarize(std::vector<double> ms) {
  TimingSummary t;
  if (ms.empty()) return t;
  std::sort(ms.begin(), ms.end());
  auto rank = [&](double q) {
    std::size_t idx = static_cast<std::size_t>(q * static_cast<double>(ms.size()) + 0.999999);
    return ms[std::min(ms.size(), std::max<std::size_t>(idx, 1)) - 1];
  };
  t.p50 = rank(0.50);
  t.p90 = rank(0.90);
  t.p99 = rank(0.99);
  t.max = ms.back();
  return t;
}

std::string timing_line(const TimingSummary& t) {
  return "ms p50=" + fmt_ms(t.p50) + " p90=" + fmt_ms(t.p90) + " p99=" + fmt_ms(t.p99) + " max=" + fmt_ms(t.max);
}

SolveOptions solve_options(const CampaignConfig& cfg) {
  SolveOptions o;
  o.node_limit = cfg.node_limit;
  o.workers = cfg.solver_workers;
  o.time_limit = cfg.time_limit;
  return o;
}

}  // namespace

void CampaignConfig::validate() const {
  auto check = [](IntRange r, const char* name) {
    if (r.lo == 0 || r.lo > r.hi) throw InvalidArgument(std::string("campaign range '") + name + "' must satisfy 1 <= lo <= hi");
  };
  check(formula_r, "formula_r");
  check(clause_count, "clause_count");
  check(matrix_m, "matrix_m");
  check(matrix_n, "matrix_n");
  if (std::max<std::size_t>(2, std::bit_ceil(formula_r.hi)) > max_padded_r)
    throw InvalidArgument("formula_r upper bound pads beyond max_padded_r = " + std::to_string(max_padded_r));
}

CnfFormula gen_random_formula(const CampaignConfig& cfg, std::uint64_t index) {
  auto rng = make_rng(cfg.seed, Stream::formula, index);
  CnfFormula f;
  f.num_vars = draw(rng, cfg.formula_r.lo, cfg.formula_r.hi);
  const std::size_t s = draw(rng, cfg.clause_count.lo, cfg.clause_count.hi);
  for (std::size_t q = 0; q < s; ++q) {
    Clause c{};
    for (Literal& lit : c) {
      const int var = static_cast<int>(draw(rng, 1, f.num_vars));
      lit = draw(rng, 0, 1) == 1 ? var : -var;
    }
    f.clauses.push_back(c);
  }
  return f;
}

BinaryMatrix gen_random_matrix(const CampaignConfig& cfg, std::uint64_t index) {
  auto rng = make_rng(cfg.seed, Stream::matrix, index);
  const std::size_t n = draw(rng, cfg.matrix_n.lo, cfg.matrix_n.hi);
  std::size_t m = draw(rng, cfg.matrix_m.lo, cfg.matrix_m.hi);
  if (n < 20) m = std::min(m, std::size_t{1} << n);
  std::set<std::string> seen;
  std::vector<std::string> rows;
  while (rows.size() < m) {
    std::string row(n, '0');
    for (char& ch : row) ch = draw(rng, 0, 1) == 1 ? '1' : '0';
    if (seen.insert(row).second) rows.push_back(std::move(row));
  }
  return BinaryMatrix::from_strings(rows);
}

EquivalenceTrial check_formula(const CnfFormula& f, const CampaignConfig& cfg, std::size_t index) {
  const auto start = Clock::now();
  EquivalenceTrial t;
  t.index = index;
  t.formula = f;
  auto fail = [&](std::string why) {
    if (t.detail.empty()) t.detail = std::move(why);
  };

  try {
    const auto alpha = solve_sat_brute_force(f);
    t.sat = alpha.has_value();

    const CostReport cost = cost_report(f);
    if (cost.r > cfg.max_padded_r) throw InvalidArgument("padded r " + std::to_string(cost.r) + " exceeds cap");
    const Reduction red = build_instance(f);
    const BinaryMatrix& a = red.instance.matrix;
    if (a.rows() != cost.m || a.cols() != cost.n || red.instance.budget_k != cost.k)
      fail("built instance dimensions differ from cost report");
    if (!rows_pairwise_distinct(a)) fail("reduced matrix has duplicate rows");

    const SolveReport rep = solve_exact(red.instance, solve_options(cfg));
    t.dv = rep.outcome == Outcome::solution;
    if (t.sat != t.dv) fail("SAT oracle and DV solver disagree");

    if (t.dv) {
      const ColumnSet& k = *rep.solution;
      t.solution = k.to_string();
      if (k.size() != red.map.budget()) fail("solution size differs from ell + log r");
      if (k.size() < lower_bound(a)) fail("solution below lower bound");
      if (!verify_solution(a, k)) fail("solver returned a non-separating set");
      const Assignment decoded = decode_solution(red.map, k);
      if (!evaluate(f, decoded)) fail("decoded solver solution does not satisfy formula");
      if (encode_solution(red.map, decoded).size() != red.map.budget()) fail("re-encoded solution has wrong size");
    }
    if (alpha) {
      const ColumnSet enc = encode_solution(red.map, *alpha);
      if (enc.size() != red.map.budget()) fail("encoded solution has wrong size");
      if (!verify_solution(a, enc)) fail("encoded solution does not verify");
      const Assignment back = decode_solution(red.map, enc);
      for (const Clause& c : f.clauses)
        for (Literal lit : c) {
          const auto v = static_cast<std::size_t>(std::abs(lit));
          if (back.value(v) != alpha->value(v)) fail("decode(encode(alpha)) changed clause variable x" + std::to_string(v));
        }
      for (std::size_t i = 1; i <= a.rows(); ++i)
        for (std::size_t j = i + 1; j <= a.rows(); ++j)
          if (classify_separation(red.map, a, enc, i, j) == Separation::none)
            fail("rows " + std::to_string(i) + "," + std::to_string(j) + " fit none of the proof's cases");
    }
  } catch (const std::exception& e) {
    fail(std::string("exception: ") + e.what());
  }
  t.ok = t.detail.empty();
  t.ms = ms_since(start);
  return t;
}

std::string EquivalenceReport::machine_lines() const {
  std::string out;
  for (const auto& t : trials)
    out += "trial " + std::to_string(t.index) + " sat=" + (t.sat ? "1" : "0") + " dv=" + (t.dv ? "1" : "0") +
           " ok=" + (t.ok ? "1" : "0") + " ms=" + fmt_ms(t.ms) + '\n';
  return out;
}

std::string EquivalenceReport::fingerprint() const {
  std::string out;
  for (const auto& t : trials)
    out += "trial " + std::to_string(t.index) + " sat=" + (t.sat ? "1" : "0") + " dv=" + (t.dv ? "1" : "0") +
           " ok=" + (t.ok ? "1" : "0") + " K=" + t.solution + '\n';
  return out;
}

std::string EquivalenceReport::summary() const {
  std::size_t sat = 0;
  for (const auto& t : trials) sat += t.sat ? 1 : 0;
  std::string out = "trials " + std::to_string(trials.size()) + " satisfiable " + std::to_string(sat) +
                    " mismatches " + std::to_string(mismatches) + '\n' + timing_line(timing) + '\n';
  for (const auto& t : trials)
    if (!t.ok) out += "FAILED trial " + std::to_string(t.index) + ": " + t.detail + '\n';
  return out;
}

EquivalenceReport run_equivalence_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  EquivalenceReport report;
  report.trials.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    report.trials[i] = check_formula(gen_random_formula(cfg, i), cfg, i);
  });

  std::vector<double> ms;
  for (const auto& t : report.trials) {
    ms.push_back(t.ms);
    if (t.ok) continue;
    ++report.mismatches;
    if (report.replay.empty()) {
      report.replay = "c replay seed=" + std::to_string(cfg.seed) + " trial=" + std::to_string(t.index) + '\n' +
                      "c reason " + t.detail + '\n' + format_dimacs(t.formula);
    }
  }
  report.timing = summarize(std::move(ms));
  if (!report.replay.empty() && !cfg.replay_path.empty()) write_text_file(cfg.replay_path, report.replay);
  return report;
}

std::string OracleReport::fingerprint() const {
  std::string out;
  for (const auto& t : trials) {
    out += "matrix " + std::to_string(t.index) + " m=" + std::to_string(t.m) + " n=" + std::to_string(t.n) +
           " ok=" + (t.ok ? "1" : "0") + '\n';
    for (std::size_t k = 0; k < t.outcomes.size(); ++k) out += "  k=" + std::to_string(k) + ' ' + t.outcomes[k] + '\n';
  }
  return out;
}

std::string OracleReport::summary() const {
  std::string out = "matrices " + std::to_string(trials.size()) + " divergences " + std::to_string(divergences) +
                    '\n' + timing_line(timing) + '\n';
  for (const auto& t : trials)
    if (!t.ok) out += "FAILED matrix " + std::to_string(t.index) + ": " + t.detail + '\n';
  return out;
}

OracleReport run_oracle_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  OracleReport report;
  report.trials.resize(cfg.trials);
  const SolveOptions opts = solve_options(cfg);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const auto start = Clock::now();
    OracleTrial& t = report.trials[i];
    t.index = i;
    auto fail = [&](std::string why) {
      if (t.detail.empty()) t.detail = std::move(why);
    };
    try {
      const BinaryMatrix a = gen_random_matrix(cfg, i);
      t.m = a.rows();
      t.n = a.cols();
      const std::size_t lb = lower_bound(a);
      std::size_t minimum = 0;
      for (std::size_t k = 0; k <= a.cols(); ++k) {
        const DvInstance inst(a, k);
        const SolveReport exact = solve_exact(inst, opts);
        const SolveReport brute = solve_brute_force(inst, opts);
        t.outcomes.push_back(exact.outcome_string());
        if (exact.outcome_string() != brute.outcome_string())
          fail("k=" + std::to_string(k) + ": exact '" + exact.outcome_string() + "' vs brute '" +
               brute.outcome_string() + "'");
        if (exact.solution) {
          const ColumnSet& sol = *exact.solution;
          if (!verify_solution(a, sol)) fail("k=" + std::to_string(k) + ": solution does not verify");
          if (k > 0 && sol.size() > k) fail("k=" + std::to_string(k) + ": solution over budget");
          if (sol.size() < lb) fail("k=" + std::to_string(k) + ": solution below lower bound");
          if (k == 0) minimum = sol.size();
        }
      }
      const ColumnSet greedy = solve_greedy(a);
      if (!verify_solution(a, greedy)) fail("greedy result does not verify");
      if (greedy.size() < minimum) fail("greedy beat the exact minimum");
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
    t.ok = t.detail.empty();
    t.ms = ms_since(start);
  });

  std::vector<double> ms;
  for (const auto& t : report.trials) {
    ms.push_back(t.ms);
    if (!t.ok) ++report.divergences;
  }
  report.timing = summarize(std::move(ms));
  return report;
}

std::string BenchReport::table(bool with_timing) const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %4s %6s %3s %-28s %10s %6s %3s", "id", "m", "n", "k", "outcome", "nodes",
                "brute", "grd");
  out << line;
  if (with_timing) {
    std::snprintf(line, sizeof line, " %10s %10s %10s", "exact_ms", "brute_ms", "greedy_ms");
    out << line;
  }
  out << '\n';
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %4zu %6zu %3zu %-28s %10llu %6s %3zu", r.id.c_str(), r.m, r.n, r.k,
                  r.outcome.c_str(), static_cast<unsigned long long>(r.nodes), r.brute.c_str(), r.greedy_size);
    out << line;
    if (with_timing) {
      std::snprintf(line, sizeof line, " %10.3f %10.3f %10.3f", r.exact_ms, r.brute_ms, r.greedy_ms);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

BenchReport run_solver_bench(const CampaignConfig& cfg) {
  cfg.validate();
  BenchReport report;
  report.rows.resize(2 * cfg.trials);
  const SolveOptions opts = solve_options(cfg);

  parallel_for(report.rows.size(), cfg.workers, [&](std::size_t slot) {
    BenchRow& row = report.rows[slot];
    const bool reduced = slot >= cfg.trials;
    const std::size_t i = reduced ? slot - cfg.trials : slot;
    row.id = (reduced ? "red-" : "mat-") + std::to_string(i);
    try {
      std::optional<DvInstance> inst;
      if (reduced)
        inst.emplace(build_instance(gen_random_formula(cfg, i)).instance);
      else
        inst.emplace(gen_random_matrix(cfg, i), 0);
      row.m = inst->matrix.rows();
      row.n = inst->matrix.cols();
      row.k = inst->budget_k;

      auto start = Clock::now();
      std::optional<SolveReport> exact;
      try {
        exact = solve_exact(*inst, opts);
        row.outcome = exact->outcome_string();
        row.nodes = exact->nodes_explored;
      } catch (const ResourceLimit&) {
        row.outcome = "limit";
      }
      row.exact_ms = ms_since(start);

      start = Clock::now();
      try {
        const SolveReport brute = solve_brute_force(*inst, opts);
        row.brute = !exact ? "n/a" : brute.outcome_string() == exact->outcome_string() ? "agree" : "DIFFER";
      } catch (const ResourceLimit&) {
        row.brute = "limit";
      }
      row.brute_ms = ms_since(start);

      start = Clock::now();
      const ColumnSet greedy = solve_greedy(inst->matrix);
      row.greedy_ms = ms_since(start);
      row.greedy_size = greedy.size();
      // The canonical answer is a minimum even when a budget is set.
      if (exact && exact->solution) row.greedy_ge_exact = greedy.size() >= exact->solution->size();
    } catch (const std::exception& e) {
      row.outcome = std::string("error: ") + e.what();
    }
  });
  return report;
}

}  // namespace dv
