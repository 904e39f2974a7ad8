#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cheb1/bench.hpp"
#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"
#include "cheb1/globalopt.hpp"
#include "cheb1/mmio.hpp"
#include "cheb1/oracle.hpp"
#include "cheb1/random.hpp"
#include "cheb1/serialize.hpp"
#include "cheb1/signgraph.hpp"

namespace cheb1 {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;     // parse errors, NotPC, bad arguments
inline constexpr int kExitRunLimit = 2;  // approx stopped at the run limit
inline constexpr int kExitNotPc = 3;     // check found tied peaks

enum class Command { approx, check, graph, oracle, bench };

struct RunConfig {
  Command command = Command::approx;
  std::string input;                                 // matrix file path
  MatrixFormat format = MatrixFormat::autodetect;
  std::string output;                                // empty means stdout
  std::string full_output;                           // graph --full target
  double conv_tol = 1e-12;
  std::size_t max_iter = 10000;
  std::vector<double> support_tols{1e-7, 1e-5, 1e-4};
  std::size_t run_limit = 0;                         // 0 means 10 * n
  std::uint64_t seed = 0;
  bool shuffle = false;
  double tie_tol = 0.0;
  double perturb = 0.0;                              // uniform noise half-width
  bool json = false;                                 // check --json
  std::size_t graph_limit = 20;
  std::size_t oracle_limit = 16;
  std::vector<std::size_t> sizes;                    // bench
  std::size_t trials = 10;
  std::size_t threads = 1;
};

namespace detail {

inline DenseMatrix load_input(const RunConfig& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw Error("cannot open input file '" + cfg.input + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  DenseMatrix a = parse_matrix(buf.str(), cfg.format);
  if (cfg.perturb > 0.0) {
    NormalRng rng(cfg.seed);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        a(i, j) += rng.uniform(-cfg.perturb, cfg.perturb);
  }
  return a;
}

inline void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
  if (cfg.output.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + cfg.output + "'");
  out << text;
}

inline AltMinOptions altmin_options(const RunConfig& cfg) {
  return AltMinOptions{cfg.max_iter, cfg.conv_tol};
}

}  // namespace detail

inline int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    DenseMatrix a = detail::load_input(cfg);
    OptimizeOptions opts;
    opts.altmin = detail::altmin_options(cfg);
    opts.tol_ladder = cfg.support_tols;
    opts.run_limit = cfg.run_limit;
    opts.seed = cfg.seed;
    opts.shuffle = cfg.shuffle;
    OptResult r = optimize(a, opts);
    detail::emit(cfg, out, opt_result_json(r).dump(2) + "\n");
    return r.terminated == "run-limit" ? kExitRunLimit : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    DenseMatrix a = detail::load_input(cfg);
    PcReport rep = preserves_chebyshev(a, cfg.tie_tol);
    if (cfg.json) {
      detail::emit(cfg, out, pc_report_json(rep).dump(2) + "\n");
    } else {
      std::string text;
      if (rep.pc) {
        text = "ok: every row and column has a unique peak\n";
      } else {
        for (std::size_t i : rep.offending_rows)
          text += "row " + std::to_string(i + 1) + " has tied maxima\n";
        for (std::size_t j : rep.offending_cols)
          text += "column " + std::to_string(j + 1) + " has tied maxima\n";
      }
      detail::emit(cfg, out, text);
    }
    return rep.pc ? kExitOk : kExitNotPc;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    DenseMatrix a = detail::load_input(cfg);
    MatrixProfile prof = make_profile(a);
    SignDependencyGraph sdg = build_dependency_graph(prof);
    detail::emit(cfg, out, to_dot(sdg));
    if (!cfg.full_output.empty()) {
      TransitionEnumeration e = enumerate_transition_graph(a, cfg.graph_limit);
      std::ofstream full(cfg.full_output, std::ios::binary);
      if (!full) throw Error("cannot open output file '" + cfg.full_output + "'");
      full << to_dot(e);
      StructureReport rep = validate_structure(e, sdg);
      out << structure_report_json(rep, e.summary).dump(2) << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    DenseMatrix a = detail::load_input(cfg);
    OracleResult r = exhaustive_optimize(a, detail::altmin_options(cfg), cfg.oracle_limit);
    detail::emit(cfg, out, oracle_json(r).dump(2) + "\n");
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.sizes.empty()) throw Error("bench requires at least one size");
    BenchOptions opts;
    opts.sizes = cfg.sizes;
    opts.trials = cfg.trials;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.opt.altmin = detail::altmin_options(cfg);
    opts.opt.tol_ladder = cfg.support_tols;
    opts.opt.run_limit = cfg.run_limit;
    detail::emit(cfg, out, bench_csv(run_bench(opts)));
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::approx:
      return cmd_approx(cfg, out, err);
    case Command::check:
      return cmd_check(cfg, out, err);
    case Command::graph:
      return cmd_graph(cfg, out, err);
    case Command::oracle:
      return cmd_oracle(cfg, out, err);
    case Command::bench:
      return cmd_bench(cfg, out, err);
  }
  return kExitError;
}

}  // namespace cheb1
