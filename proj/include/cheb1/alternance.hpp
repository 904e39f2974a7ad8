#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"

namespace cheb1 {

using Entry = std::pair<std::size_t, std::size_t>;

/// Positions where the residual A - u v^T attains its maximum absolute
/// value (up to a relative tolerance), with the weighted residual sign
///   tau_ij = sign(u_i v_j (a_ij - u_i v_j))
/// on each of them.
struct ResidualSupport {
  std::size_t m = 0;
  std::size_t n = 0;
  double error = 0.0;
  double tol = 0.0;
  std::vector<Entry> entries;       // lexicographically sorted
  std::vector<int> tau;             // parallel to entries
  std::vector<std::size_t> rows;    // sorted unique
  std::vector<std::size_t> cols;    // sorted unique
  std::vector<std::int8_t> tau_grid;  // m*n, 0 where not in the support

  int tau_at(std::size_t i, std::size_t j) const { return tau_grid[i * n + j]; }
};

inline ResidualSupport residual_support(const DenseMatrix& a, const ChebVector& u,
                                        const ChebVector& v, double tol = 1e-7) {
  if (u.size() != a.rows() || v.size() != a.cols()) {
    throw DimensionMismatch("factor lengths must match the matrix shape");
  }
  ResidualSupport s;
  s.m = a.rows();
  s.n = a.cols();
  s.tol = tol;
  for (std::size_t i = 0; i < s.m; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      s.error = std::max(s.error, std::abs(a(i, j) - u[i] * v[j]));
    }
  }
  s.tau_grid.assign(s.m * s.n, 0);
  double cutoff = (1.0 - tol) * s.error;
  std::vector<bool> row_seen(s.m, false), col_seen(s.n, false);
  for (std::size_t i = 0; i < s.m; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      double r = a(i, j) - u[i] * v[j];
      if (std::abs(r) < cutoff) continue;
      double w = u[i] * v[j] * r;
      int t = w > 0.0 ? 1 : (w < 0.0 ? -1 : 0);
      s.entries.emplace_back(i, j);
      s.tau.push_back(t);
      s.tau_grid[i * s.n + j] = static_cast<std::int8_t>(t);
      row_seen[i] = true;
      col_seen[j] = true;
    }
  }
  for (std::size_t i = 0; i < s.m; ++i)
    if (row_seen[i]) s.rows.push_back(i);
  for (std::size_t j = 0; j < s.n; ++j)
    if (col_seen[j]) s.cols.push_back(j);
  return s;
}

/// Closed alternating sequence of 2k distinct support entries
///   (i1,j1),(i1,j2),(i2,j2),...,(ik,jk),(ik,j1)
/// whose tau signs alternate around the cycle. Certifies via the exchange
/// argument that no factor pair with the same column signs on `cols` can
/// achieve a smaller error.
struct AlternanceCertificate {
  std::vector<Entry> cycle;          // 2k entries
  std::vector<std::size_t> rows;     // distinct rows, sorted
  std::vector<std::size_t> cols;     // distinct columns, sorted
  double error = 0.0;
};

namespace detail {

struct CycleSearch {
  const ResidualSupport& s;
  std::vector<std::vector<std::uint32_t>> by_row;
  std::vector<std::vector<std::uint32_t>> by_col;
  std::vector<bool> in_path;
  std::vector<std::uint32_t> path;
  std::size_t depth_cap = 0;
  long budget = 1 << 21;

  explicit CycleSearch(const ResidualSupport& support) : s(support) {
    by_row.resize(s.m);
    by_col.resize(s.n);
    for (std::uint32_t e = 0; e < s.entries.size(); ++e) {
      by_row[s.entries[e].first].push_back(e);
      by_col[s.entries[e].second].push_back(e);
    }
    in_path.assign(s.entries.size(), false);
  }

  // Entries alternate row moves and column moves; each move flips tau.
  // path.size() odd -> next move stays in the current row, even -> column.
  bool extend(std::uint32_t cur) {
    if (--budget <= 0) return false;
    const bool row_move = (path.size() % 2) == 1;
    const Entry& ce = s.entries[cur];
    if (!row_move && path.size() >= 4 && ce.second == s.entries[path[0]].second) {
      return true;  // closing column move back to the start
    }
    if (path.size() >= depth_cap) return false;
    const auto& adj = row_move ? by_row[ce.first] : by_col[ce.second];
    for (std::uint32_t nxt : adj) {
      if (nxt == cur || in_path[nxt]) continue;
      if (s.tau[nxt] != -s.tau[cur]) continue;
      const Entry& ne = s.entries[nxt];
      if (row_move ? (ne.second == ce.second) : (ne.first == ce.first)) continue;
      path.push_back(nxt);
      in_path[nxt] = true;
      if (extend(nxt)) return true;
      in_path[nxt] = false;
      path.pop_back();
    }
    return false;
  }
};

}  // namespace detail

/// Searches the support for a two-dimensional alternance, preferring short
/// cycles (iterative deepening). Returns nothing when no cycle exists or
/// the node budget runs out.
inline std::optional<AlternanceCertificate> find_alternance(const ResidualSupport& s) {
  if (s.entries.size() < 4 || s.error == 0.0) return std::nullopt;
  detail::CycleSearch search(s);
  for (std::size_t cap = 4; cap <= s.entries.size() + 1; cap += 2) {
    search.depth_cap = cap;
    for (std::uint32_t start = 0; start < s.entries.size(); ++start) {
      if (s.tau[start] == 0) continue;
      search.path.assign(1, start);
      search.in_path.assign(s.entries.size(), false);
      search.in_path[start] = true;
      if (search.extend(start)) {
        AlternanceCertificate cert;
        cert.error = s.error;
        for (std::uint32_t e : search.path) cert.cycle.push_back(s.entries[e]);
        for (const Entry& e : cert.cycle) {
          cert.rows.push_back(e.first);
          cert.cols.push_back(e.second);
        }
        std::sort(cert.rows.begin(), cert.rows.end());
        cert.rows.erase(std::unique(cert.rows.begin(), cert.rows.end()), cert.rows.end());
        std::sort(cert.cols.begin(), cert.cols.end());
        cert.cols.erase(std::unique(cert.cols.begin(), cert.cols.end()), cert.cols.end());
        return cert;
      }
      if (search.budget <= 0) return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Re-derives the residual signs and checks the certificate from scratch:
/// entry distinctness, membership in the tol-support, the alternating
/// row/column move pattern, and the alternating tau chain around the cycle.
inline bool verify_certificate(const DenseMatrix& a, const ChebVector& u, const ChebVector& v,
                               const AlternanceCertificate& cert, double tol = 1e-7) {
  if (u.size() != a.rows() || v.size() != a.cols()) return false;
  const std::size_t len = cert.cycle.size();
  if (len < 4 || len % 2 != 0) return false;

  std::vector<Entry> sorted = cert.cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

  double err = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      err = std::max(err, std::abs(a(i, j) - u[i] * v[j]));
  if (err == 0.0) return false;
  double cutoff = (1.0 - tol) * err;

  auto tau_of = [&](const Entry& e) {
    double r = a(e.first, e.second) - u[e.first] * v[e.second];
    if (std::abs(r) < cutoff) return 0;  // not in the support
    double w = u[e.first] * v[e.second] * r;
    return w > 0.0 ? 1 : (w < 0.0 ? -1 : 0);
  };

  int prev_tau = 0;
  for (std::size_t s = 0; s < len; ++s) {
    const Entry& e = cert.cycle[s];
    if (e.first >= a.rows() || e.second >= a.cols()) return false;
    int t = tau_of(e);
    if (t == 0) return false;
    if (s > 0 && t != -prev_tau) return false;
    prev_tau = t;
    const Entry& f = cert.cycle[(s + 1) % len];
    bool row_move = (s % 2) == 0;
    if (row_move ? (e.first != f.first || e.second == f.second)
                 : (e.second != f.second || e.first == f.first)) {
      return false;
    }
  }
  return tau_of(cert.cycle[0]) == -prev_tau;
}

}  // namespace cheb1
