#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cheb1/cli.hpp"

namespace {

void add_matrix_options(CLI::App* cmd, cheb1::RunConfig& cfg) {
  cmd->add_option("input", cfg.input, "matrix file (CSV or MatrixMarket dense array)")
      ->required();
  std::map<std::string, cheb1::MatrixFormat> formats{
      {"auto", cheb1::MatrixFormat::autodetect},
      {"csv", cheb1::MatrixFormat::csv},
      {"mtx", cheb1::MatrixFormat::matrix_market}};
  cmd->add_option("--format", cfg.format, "input format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--perturb", cfg.perturb,
                  "add uniform noise in [-eps, eps] to escape tied peaks (seeded)");
}

void add_solver_options(CLI::App* cmd, cheb1::RunConfig& cfg) {
  cmd->add_option("--conv-tol", cfg.conv_tol, "relative per-sweep error decrease threshold");
  cmd->add_option("--max-iter", cfg.max_iter, "sweep cap per alternating minimization run");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Globally optimal rank-1 matrix approximation in the max norm"};
  app.require_subcommand(1);
  cheb1::RunConfig cfg;

  auto* approx = app.add_subcommand("approx", "compute the optimal rank-1 approximation");
  add_matrix_options(approx, cfg);
  add_solver_options(approx, cfg);
  approx->add_option("--support-tol", cfg.support_tols,
                     "residual support tolerance ladder for certificates");
  approx->add_option("--run-limit", cfg.run_limit, "cap on search launches (0 = 10*n)");
  approx->add_option("--seed", cfg.seed, "seed for --shuffle and --perturb");
  approx->add_flag("--shuffle", cfg.shuffle, "randomize candidate sign patterns");
  approx->add_option("-o,--output", cfg.output, "write the JSON result here");

  auto* check = app.add_subcommand("check", "report rows/columns with tied maxima");
  add_matrix_options(check, cfg);
  check->add_option("--tie-tol", cfg.tie_tol, "treat near-ties within this relative gap as tied");
  check->add_flag("--json", cfg.json, "machine-readable report");
  check->add_option("-o,--output", cfg.output, "write the report here");

  auto* graph = app.add_subcommand("graph", "emit the sign dependency graph as DOT");
  add_matrix_options(graph, cfg);
  graph->add_option("-o,--output", cfg.output, "write the dependency graph DOT here");
  graph->add_option("--full", cfg.full_output,
                    "also enumerate the full sign transition graph into this DOT file and "
                    "print its validation report");
  graph->add_option("--limit", cfg.graph_limit, "size cap for full enumeration");

  auto* oracle = app.add_subcommand("oracle", "brute-force search over all sign classes");
  add_matrix_options(oracle, cfg);
  add_solver_options(oracle, cfg);
  oracle->add_option("--limit", cfg.oracle_limit, "refuse matrices wider than this");
  oracle->add_option("-o,--output", cfg.output, "write the JSON result here");

  auto* bench = app.add_subcommand("bench", "time the optimizer on random normal matrices");
  bench->add_option("--sizes", cfg.sizes, "matrix sizes")->required()->delimiter(',');
  bench->add_option("--trials", cfg.trials, "matrices per size");
  bench->add_option("--seed", cfg.seed, "stream seed");
  bench->add_option("--threads", cfg.threads, "parallel trials");
  add_solver_options(bench, cfg);
  bench->add_option("--run-limit", cfg.run_limit, "cap on search launches (0 = 10*n)");
  bench->add_option("-o,--output", cfg.output, "write the CSV here");

  CLI11_PARSE(app, argc, argv);

  if (approx->parsed()) cfg.command = cheb1::Command::approx;
  if (check->parsed()) cfg.command = cheb1::Command::check;
  if (graph->parsed()) cfg.command = cheb1::Command::graph;
  if (oracle->parsed()) cfg.command = cheb1::Command::oracle;
  if (bench->parsed()) cfg.command = cheb1::Command::bench;

  return cheb1::run_command(cfg, std::cout, std::cerr);
}
