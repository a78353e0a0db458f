// dvtool: Distinct Vectors solvers, the 3SAT reduction and validation
// campaigns behind one command line.
//
// Exit codes: 0 success, 1 no solution / verification failed, 2 usage or
// input error, 3 resource limit.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "dv/errors.hpp"
#include "dv/harness.hpp"
#include "dv/instance.hpp"
#include "dv/reduction.hpp"
#include "dv/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr int kResourceLimit = 3;

struct SolverFlags {
  std::optional<std::size_t> k;
  std::string solver = "exact";
  unsigned workers = 1;
  std::uint64_t node_limit = 100'000'000;
  std::optional<long> time_limit_ms;
  bool verbose = false;
};

void add_campaign_flags(CLI::App* cmd, dv::CampaignConfig& cfg, std::optional<long>& time_limit_ms) {
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--trials", cfg.trials, "Number of generated instances");
  cmd->add_option("--r-min", cfg.formula_r.lo, "Minimum formula variables");
  cmd->add_option("--r-max", cfg.formula_r.hi, "Maximum formula variables");
  cmd->add_option("--s-min", cfg.clause_count.lo, "Minimum clauses");
  cmd->add_option("--s-max", cfg.clause_count.hi, "Maximum clauses");
  cmd->add_option("--m-min", cfg.matrix_m.lo, "Minimum matrix rows");
  cmd->add_option("--m-max", cfg.matrix_m.hi, "Maximum matrix rows");
  cmd->add_option("--n-min", cfg.matrix_n.lo, "Minimum matrix columns");
  cmd->add_option("--n-max", cfg.matrix_n.hi, "Maximum matrix columns");
  cmd->add_option("--workers", cfg.workers, "Trials run concurrently")->check(CLI::PositiveNumber);
  cmd->add_option("--solver-workers", cfg.solver_workers, "Threads inside each exact solve")->check(CLI::PositiveNumber);
  cmd->add_option("--node-limit", cfg.node_limit, "Solver node limit");
  cmd->add_option("--time-limit-ms", time_limit_ms, "Per-solve time limit");
  cmd->add_option("--max-padded-r", cfg.max_padded_r, "Largest padded r accepted");
}

dv::SolveOptions to_options(const SolverFlags& f) {
  dv::SolveOptions o;
  o.node_limit = f.node_limit;
  o.workers = f.workers;
  if (f.time_limit_ms) o.time_limit = std::chrono::milliseconds(*f.time_limit_ms);
  return o;
}

int run_solve(const std::string& path, const SolverFlags& flags, const std::string& out_path) {
  dv::DvInstance inst = dv::read_instance_file(path);
  if (flags.k) inst = dv::DvInstance(inst.matrix, *flags.k);

  std::optional<dv::ColumnSet> answer;
  if (flags.solver == "greedy") {
    try {
      answer = dv::solve_greedy(inst.matrix);
    } catch (const dv::Infeasible&) {
      std::cout << "INFEASIBLE: matrix has duplicate rows\n";
      return kNo;
    }
  } else {
    const dv::SolveReport rep = flags.solver == "brute" ? dv::solve_brute_force(inst, to_options(flags))
                                                        : dv::solve_exact(inst, to_options(flags));
    if (flags.verbose)
      std::cerr << "solver=" << flags.solver << " lower_bound=" << rep.lower_bound_used
                << " nodes=" << rep.nodes_explored
                << " ms=" << std::chrono::duration<double, std::milli>(rep.wall_time).count() << '\n';
    if (rep.outcome == dv::Outcome::infeasible) {
      std::cout << "INFEASIBLE: matrix has duplicate rows\n";
      if (!out_path.empty()) dv::write_text_file(out_path, dv::format_solution(std::nullopt));
      return kNo;
    }
    if (rep.outcome == dv::Outcome::budget_exceeded) {
      std::cout << "UNSAT-LIKE: no column subset of size <= " << inst.budget_k << '\n';
      if (!out_path.empty()) dv::write_text_file(out_path, dv::format_solution(std::nullopt));
      return kNo;
    }
    answer = rep.solution;
  }
  std::cout << answer->to_string() << '\n';
  if (!out_path.empty()) dv::write_text_file(out_path, dv::format_solution(answer));
  return kOk;
}

int run_verify(const std::string& inst_path, const std::string& sol_path) {
  const dv::DvInstance inst = dv::read_instance_file(inst_path);
  const auto k = dv::read_solution_file(sol_path);
  bool ok = k.has_value();
  if (ok && k->max() > inst.matrix.cols()) throw dv::InvalidArgument("solution column exceeds instance width");
  if (ok && inst.budget_k > 0 && k->size() > inst.budget_k) ok = false;
  if (ok) ok = dv::verify_solution(inst.matrix, *k);
  std::cout << (ok ? "OK" : "FAIL") << '\n';
  return ok ? kOk : kNo;
}

int run_reduce(const std::string& cnf_path, const std::string& prefix, std::uint64_t max_cols) {
  const dv::CnfFormula f = dv::parse_dimacs(dv::read_text_file(cnf_path));
  const dv::Reduction red = dv::build_instance(f, dv::ReductionOptions{max_cols});
  dv::write_text_file(prefix + ".dv", dv::format_instance(red.instance));
  dv::write_text_file(prefix + ".meta", dv::format_metadata(red.map));
  std::cout << prefix << ".dv\n" << prefix << ".meta\n";
  return kOk;
}

int run_decode(const std::string& inst_path, const std::string& meta_path, const std::string& sol_path) {
  const dv::DvInstance inst = dv::read_instance_file(inst_path);
  const dv::ReductionMap map = dv::parse_metadata(dv::read_text_file(meta_path));
  if (inst.matrix.rows() != map.num_rows() || inst.matrix.cols() != map.num_cols())
    throw dv::InvalidArgument("instance dimensions do not match the metadata");
  const auto k = dv::read_solution_file(sol_path);
  if (!k) {
    std::cout << "UNSAT-LIKE: no solution to decode\n";
    return kNo;
  }
  if (k->max() > inst.matrix.cols() || !dv::verify_solution(inst.matrix, *k) || k->size() > map.budget()) {
    std::cout << "FAIL\n";
    return kNo;
  }
  const dv::Assignment alpha = dv::decode_solution(map, *k);
  std::vector<bool> original(alpha.values().begin(),
                             alpha.values().begin() + static_cast<std::ptrdiff_t>(map.padded().original_r));
  std::cout << dv::Assignment(std::move(original)).to_string() << '\n';
  return kOk;
}

int run_gen(const dv::CampaignConfig& cfg, const std::string& kind, std::uint64_t index, std::size_t k,
            const std::string& out_path) {
  std::string text;
  if (kind == "cnf") {
    text = dv::format_dimacs(dv::gen_random_formula(cfg, index));
  } else {
    dv::BinaryMatrix a = dv::gen_random_matrix(cfg, index);
    text = dv::format_instance(dv::DvInstance(std::move(a), k));
  }
  if (out_path.empty())
    std::cout << text;
  else
    dv::write_text_file(out_path, text);
  return kOk;
}

int run_campaign(dv::CampaignConfig cfg, bool oracle, const std::string& replay_from, const std::string& report_path) {
  if (!replay_from.empty()) {
    const dv::CnfFormula f = dv::parse_dimacs(dv::read_text_file(replay_from));
    const dv::EquivalenceTrial t = dv::check_formula(f, cfg);
    std::cout << "trial 0 sat=" << t.sat << " dv=" << t.dv << " ok=" << t.ok << " ms=" << t.ms << '\n';
    if (!t.ok) std::cerr << "FAILED: " << t.detail << '\n';
    return t.ok ? kOk : kNo;
  }
  if (oracle) {
    const dv::OracleReport rep = dv::run_oracle_campaign(cfg);
    std::cout << rep.fingerprint();
    std::cerr << rep.summary();
    if (!report_path.empty()) dv::write_text_file(report_path, rep.fingerprint() + rep.summary());
    return rep.divergences == 0 ? kOk : kNo;
  }
  const dv::EquivalenceReport rep = dv::run_equivalence_campaign(cfg);
  std::cout << rep.machine_lines();
  std::cerr << rep.summary();
  if (!rep.replay.empty() && !cfg.replay_path.empty()) std::cerr << "replay written to " << cfg.replay_path << '\n';
  if (!report_path.empty()) dv::write_text_file(report_path, rep.machine_lines() + rep.summary());
  return rep.mismatches == 0 ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinct Vectors solvers and the 3SAT reduction"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all");

  SolverFlags solver;
  std::string path_a, path_b, path_c, out_path;
  std::uint64_t max_cols = std::uint64_t{1} << 20;

  auto* solve = app.add_subcommand("solve", "Solve a Distinct Vectors instance");
  solve->add_option("instance", path_a, "Instance file")->required();
  solve->add_option("--k", solver.k, "Override budget (0 = minimize)");
  solve->add_option("--solver", solver.solver, "exact|brute|greedy")
      ->check(CLI::IsMember({"exact", "brute", "greedy"}));
  solve->add_option("--workers", solver.workers, "Solver threads")->check(CLI::PositiveNumber);
  solve->add_option("--node-limit", solver.node_limit, "Node / subset limit");
  solve->add_option("--time-limit-ms", solver.time_limit_ms, "Wall-clock limit");
  solve->add_option("-o,--out", out_path, "Also write the solution file here");
  solve->add_flag("--verbose", solver.verbose, "Print node counts to stderr");

  auto* reduce = app.add_subcommand("reduce", "Reduce a 3CNF formula to a Distinct Vectors instance");
  reduce->add_option("cnf", path_a, "DIMACS file")->required();
  reduce->add_option("prefix", path_b, "Writes <prefix>.dv and <prefix>.meta")->required();
  reduce->add_option("--max-cols", max_cols, "Cap on bundle columns");

  auto* decode = app.add_subcommand("decode", "Turn a solution of a reduced instance into an assignment");
  decode->add_option("instance", path_a)->required();
  decode->add_option("metadata", path_b)->required();
  decode->add_option("solution", path_c)->required();

  auto* verify = app.add_subcommand("verify", "Check a column set against an instance");
  verify->add_option("instance", path_a)->required();
  verify->add_option("solution", path_b)->required();

  auto* cost = app.add_subcommand("cost", "Parameters of the reduced instance, without building it");
  cost->add_option("cnf", path_a)->required();

  dv::CampaignConfig cfg;
  std::optional<long> campaign_time_ms;
  std::string gen_kind = "cnf", replay_from, report_path;
  std::uint64_t gen_index = 0;
  std::size_t gen_k = 0;
  bool oracle = false;

  auto* gen = app.add_subcommand("gen", "Generate a random formula or matrix");
  add_campaign_flags(gen, cfg, campaign_time_ms);
  gen->add_option("--kind", gen_kind, "cnf|dv")->check(CLI::IsMember({"cnf", "dv"}));
  gen->add_option("--index", gen_index, "Trial index");
  gen->add_option("--k", gen_k, "Budget written into a dv instance");
  gen->add_option("-o,--out", out_path, "Output file (default stdout)");

  auto* campaign = app.add_subcommand("campaign", "Reduction equivalence (or solver oracle) campaign");
  add_campaign_flags(campaign, cfg, campaign_time_ms);
  campaign->add_option("--replay", cfg.replay_path, "Write the first failing formula here");
  campaign->add_option("--replay-from", replay_from, "Re-check one formula from a replay file");
  campaign->add_option("--report", report_path, "Also write the report here");
  campaign->add_flag("--oracle", oracle, "Compare exact and brute-force solvers on random matrices instead");

  auto* bench = app.add_subcommand("bench", "Time the solvers on random and reduced instances");
  add_campaign_flags(bench, cfg, campaign_time_ms);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (campaign_time_ms) cfg.time_limit = std::chrono::milliseconds(*campaign_time_ms);

  try {
    if (*solve) return run_solve(path_a, solver, out_path);
    if (*reduce) return run_reduce(path_a, path_b, max_cols);
    if (*decode) return run_decode(path_a, path_b, path_c);
    if (*verify) return run_verify(path_a, path_b);
    if (*cost) {
      std::cout << dv::format_cost_report(dv::cost_report(dv::parse_dimacs(dv::read_text_file(path_a))));
      return kOk;
    }
    if (*gen) return run_gen(cfg, gen_kind, gen_index, gen_k, out_path);
    if (*campaign) return run_campaign(cfg, oracle, replay_from, report_path);
    if (*bench) {
      cfg.validate();
      std::cout << dv::run_solver_bench(cfg).table();
      return kOk;
    }
  } catch (const dv::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const dv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
