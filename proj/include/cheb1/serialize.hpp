#pragma once

#include <string>

#include <json.hpp>

#include "cheb1/alternance.hpp"
#include "cheb1/core.hpp"
#include "cheb1/globalopt.hpp"
#include "cheb1/oracle.hpp"
#include "cheb1/signgraph.hpp"

namespace cheb1 {

using ordered_json = nlohmann::ordered_json;

inline ordered_json certificate_json(const AlternanceCertificate& c) {
  ordered_json j;
  j["error"] = c.error;
  ordered_json entries = ordered_json::array();
  for (const Entry& e : c.cycle) entries.push_back({e.first + 1, e.second + 1});
  j["entries"] = std::move(entries);
  ordered_json cols = ordered_json::array();
  for (std::size_t col : c.cols) cols.push_back(col + 1);
  j["columns"] = std::move(cols);
  ordered_json rows = ordered_json::array();
  for (std::size_t row : c.rows) rows.push_back(row + 1);
  j["rows"] = std::move(rows);
  return j;
}

/// Result document with a fixed field order:
/// {error, u, v, runs, patterns, certificates, terminated}.
inline ordered_json opt_result_json(const OptResult& r) {
  ordered_json j;
  j["error"] = r.error;
  j["u"] = r.u;
  j["v"] = r.v;
  j["runs"] = r.runs;
  ordered_json patterns = ordered_json::array();
  for (const RunRecord& rec : r.run_records) {
    ordered_json p;
    for (std::size_t pos = 0; pos < r.loop_columns.size(); ++pos) {
      p[std::to_string(r.loop_columns[pos] + 1)] = rec.pattern[pos];
    }
    patterns.push_back(std::move(p));
  }
  j["patterns"] = std::move(patterns);
  ordered_json certs = ordered_json::array();
  for (const RunRecord& rec : r.run_records) {
    ordered_json c;
    c["run"] = rec.run;
    c["error"] = rec.error;
    c["converged"] = rec.converged;
    c["fallback"] = rec.fallback;
    if (rec.certificate) {
      c["tolerance"] = rec.tol_used;
      c["certificate"] = certificate_json(*rec.certificate);
    }
    certs.push_back(std::move(c));
  }
  j["certificates"] = std::move(certs);
  j["terminated"] = r.terminated;
  return j;
}

inline ordered_json oracle_json(const OracleResult& r) {
  ordered_json j;
  j["error"] = r.error;
  j["best_pattern"] = r.best_pattern.to_string();
  ordered_json classes = ordered_json::array();
  for (const auto& [pattern, e] : r.per_class_errors) {
    ordered_json c;
    c["pattern"] = pattern.to_string();
    c["error"] = e;
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  return j;
}

inline ordered_json pc_report_json(const PcReport& r) {
  ordered_json j;
  j["pc"] = r.pc;
  ordered_json rows = ordered_json::array();
  for (std::size_t i : r.offending_rows) rows.push_back(i + 1);
  j["offending_rows"] = std::move(rows);
  ordered_json cols = ordered_json::array();
  for (std::size_t c : r.offending_cols) cols.push_back(c + 1);
  j["offending_cols"] = std::move(cols);
  return j;
}

inline ordered_json structure_report_json(const StructureReport& r,
                                          const TransitionGraphSummary& summary) {
  ordered_json j;
  j["all_pass"] = r.all_pass();
  j["membership_iff_f"] = r.membership_iff_f;
  j["counts_ok"] = r.counts_ok;
  j["unique_loop_ok"] = r.unique_loop_ok;
  j["d_recurrence_ok"] = r.d_recurrence_ok;
  j["isomorphism_ok"] = r.isomorphism_ok;
  j["depth_ok"] = r.depth_ok;
  j["failures"] = r.failures;
  j["n"] = summary.n;
  j["loop_count"] = summary.loop_count;
  j["vertex_count"] = summary.vertex_count;
  ordered_json comps = ordered_json::array();
  for (const auto& c : summary.components) {
    ordered_json cj;
    cj["loop_vertex"] = c.loop_vertex.to_string();
    cj["size"] = c.size;
    cj["depth"] = c.depth;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  return j;
}

}  // namespace cheb1
