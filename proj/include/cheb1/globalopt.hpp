#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheb1/altmin.hpp"
#include "cheb1/alternance.hpp"
#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"
#include "cheb1/random.hpp"
#include "cheb1/signgraph.hpp"

namespace cheb1 {

/// Sign pattern restricted to the loop columns F; entries are +-1 and run
/// parallel to Dnf::variables.
using FPattern = std::vector<int>;

/// Disjunction of sign-pattern conjunctions over the loop columns F.
/// Patterns satisfying any clause are known not to improve on a completed
/// run. An empty clause list covers nothing.
class Dnf {
 public:
  struct Clause {
    // (position within variables, required sign), sorted by position.
    std::vector<std::pair<std::size_t, int>> literals;
  };

  Dnf() = default;
  explicit Dnf(std::vector<std::size_t> variables) : variables_(std::move(variables)) {}

  const std::vector<std::size_t>& variables() const { return variables_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool covers(const FPattern& pattern) const {
    if (pattern.size() != variables_.size()) {
      throw VariableMismatch("pattern length differs from the DNF variable set");
    }
    for (const Clause& c : clauses_) {
      bool sat = true;
      for (auto [pos, sign] : c.literals) {
        if (pattern[pos] != sign) {
          sat = false;
          break;
        }
      }
      if (sat) return true;
    }
    return false;
  }

  /// Appends the conjunction over {reach[s] : s in columns} with literal
  /// signs taken from the stabilized limit signs w at those loop columns.
  void add_alternance(const SignVector& w, const std::vector<std::size_t>& columns,
                      const std::vector<std::size_t>& reach) {
    Clause c;
    std::vector<std::size_t> targets;
    for (std::size_t s : columns) targets.push_back(reach.at(s));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::size_t col : targets) {
      auto it = std::lower_bound(variables_.begin(), variables_.end(), col);
      if (it == variables_.end() || *it != col) {
        throw VariableMismatch("alternance column does not reach a DNF variable");
      }
      c.literals.emplace_back(static_cast<std::size_t>(it - variables_.begin()), w[col]);
    }
    clauses_.push_back(std::move(c));
  }

  /// Covers exactly the one pattern given (a conjunction over all of F).
  void add_full_clause(const FPattern& pattern) {
    if (pattern.size() != variables_.size()) {
      throw VariableMismatch("pattern length differs from the DNF variable set");
    }
    Clause c;
    for (std::size_t pos = 0; pos < pattern.size(); ++pos) c.literals.emplace_back(pos, pattern[pos]);
    clauses_.push_back(std::move(c));
  }

  /// Finds a pattern x with neither x nor -x covered. Variables are
  /// assigned recursively in ascending order (+1 branch first, so the first
  /// hit is the lexicographically smallest valid pattern); a branch is
  /// abandoned as soon as some clause is fully satisfied by the partial
  /// assignment on either x or -x. A clause one literal away from being
  /// satisfied forces that literal's variable to the opposite sign, which
  /// keeps the search shallow even when the clause set grows large. An RNG
  /// shuffles branch polarity when supplied.
  std::optional<FPattern> next_uncovered(NormalRng* rng = nullptr) const {
    std::vector<int> assign(variables_.size(), 0);
    std::vector<std::size_t> trail;
    if (search(assign, trail, rng)) return FPattern(assign.begin(), assign.end());
    return std::nullopt;
  }

 private:
  // Repeatedly applies forced assignments. Returns false when some clause
  // is fully satisfied by the current partial assignment on x or -x.
  bool propagate(std::vector<int>& assign, std::vector<std::size_t>& trail) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& c : clauses_) {
        for (int side : {1, -1}) {
          bool broken = false;
          std::size_t open = 0, open_pos = 0;
          int open_want = 0;
          for (auto [p, sign] : c.literals) {
            int want = side * sign;
            if (assign[p] == 0) {
              ++open;
              open_pos = p;
              open_want = want;
            } else if (assign[p] != want) {
              broken = true;
              break;
            }
          }
          if (broken) continue;
          if (open == 0) return false;
          if (open == 1) {
            assign[open_pos] = -open_want;
            trail.push_back(open_pos);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  bool search(std::vector<int>& assign, std::vector<std::size_t>& trail, NormalRng* rng) const {
    const std::size_t mark = trail.size();
    if (!propagate(assign, trail)) {
      while (trail.size() > mark) {
        assign[trail.back()] = 0;
        trail.pop_back();
      }
      return false;
    }
    std::size_t pos = 0;
    while (pos < assign.size() && assign[pos] != 0) ++pos;
    if (pos == assign.size()) return true;
    int first = 1;
    if (rng && rng->uniform01() < 0.5) first = -1;
    trail.push_back(pos);
    for (int branch : {first, -first}) {
      assign[pos] = branch;
      if (search(assign, trail, rng)) return true;
    }
    while (trail.size() > mark) {
      assign[trail.back()] = 0;
      trail.pop_back();
    }
    return false;
  }

  std::vector<std::size_t> variables_;
  std::vector<Clause> clauses_;
};

struct OptimizeOptions {
  AltMinOptions altmin{};
  std::vector<double> tol_ladder{1e-7, 1e-5, 1e-4};
  std::size_t run_limit = 0;  // 0 means 10 * n
  std::uint64_t seed = 0;
  bool shuffle = false;  // randomize candidate order (benchmarking variance)
};

/// One alternating minimization launch inside the global search.
struct RunRecord {
  std::size_t run = 0;  // 1-based
  FPattern pattern;     // the explored F-pattern
  double error = 0.0;   // ||A - u v^T||_C of the certified pair
  bool converged = false;
  std::vector<double> u;
  std::vector<double> v;
  std::optional<AlternanceCertificate> certificate;
  double tol_used = 0.0;
  bool fallback = false;  // no certificate found; full-F clause added instead
};

struct OptResult {
  std::vector<double> u;
  std::vector<double> v;
  double error = 0.0;
  std::size_t runs = 0;
  std::vector<std::size_t> loop_columns;  // F, ascending
  std::vector<RunRecord> run_records;
  std::string terminated;  // "dnf-full" | "run-limit"
  Dnf dnf;                 // final coverage state
};

/// Global minimum of ||A - u v^T||_C over all rank-1 factor pairs, found by
/// launching alternating minimization from one representative of every sign
/// class on the loop columns F that is not yet covered by the DNF, and
/// recording an alternance-derived clause after every launch. Negated
/// patterns are never both explored.
inline OptResult optimize(const DenseMatrix& a, const OptimizeOptions& opts = {}) {
  const MatrixProfile prof = make_profile(a);  // throws NotPC
  const SignDependencyGraph sdg = build_dependency_graph(prof);
  const std::size_t n = a.cols();
  const std::size_t run_limit = opts.run_limit ? opts.run_limit : 10 * n;

  OptResult result;
  result.loop_columns = sdg.loops;
  result.dnf = Dnf(sdg.loops);
  result.terminated = "dnf-full";

  NormalRng rng(opts.seed);
  NormalRng* shuffler = opts.shuffle ? &rng : nullptr;

  while (true) {
    if (result.runs >= run_limit) {
      if (result.dnf.next_uncovered(nullptr)) result.terminated = "run-limit";
      break;
    }
    auto pattern = result.dnf.next_uncovered(shuffler);
    if (!pattern) break;

    // Off-F components are fixed to +1; they do not affect the limit error.
    std::vector<double> v0(n, 1.0);
    for (std::size_t pos = 0; pos < sdg.loops.size(); ++pos) {
      v0[sdg.loops[pos]] = (*pattern)[pos];
    }

    AltMinRun run = run_altmin(a, ChebVector(std::move(v0)), opts.altmin);
    auto [u_best, err_best] = detail::fit_rows_raw(a, run.v.span());
    ChebVector u_cert(u_best);

    RunRecord rec;
    rec.run = ++result.runs;
    rec.pattern = *pattern;
    rec.error = err_best;
    rec.converged = run.converged;
    rec.u = u_cert.values();
    rec.v = run.v.values();

    // The clause derived from a certificate prunes whole families of sign
    // classes, but its justification needs the limit signs to be settled;
    // a run stopped by the sweep cap gets the single-pattern fallback.
    if (run.converged) {
      for (double tol : opts.tol_ladder) {
        ResidualSupport support = residual_support(a, u_cert, run.v, tol);
        auto cert = find_alternance(support);
        if (cert && verify_certificate(a, u_cert, run.v, *cert, tol)) {
          rec.certificate = std::move(cert);
          rec.tol_used = tol;
          break;
        }
      }
    }

    if (rec.certificate) {
      result.dnf.add_alternance(run.stabilized_signs, rec.certificate->cols, sdg.reach);
    } else {
      // Weakest update: cover exactly the explored sign class.
      rec.fallback = true;
      FPattern stabilized(sdg.loops.size());
      for (std::size_t pos = 0; pos < sdg.loops.size(); ++pos) {
        stabilized[pos] = run.stabilized_signs[sdg.loops[pos]];
      }
      result.dnf.add_full_clause(stabilized);
    }

    if (result.runs == 1 || rec.error < result.error) {
      result.error = rec.error;
      result.u = rec.u;
      result.v = rec.v;
    }
    result.run_records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace cheb1
