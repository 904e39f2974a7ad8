#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"

namespace cheb1 {

/// Functional graph on column indices with an edge k -> l exactly when the
/// peak of column l sits in a row whose own peak is column k. Every vertex
/// has one incoming edge; `loops` (the set F) are the self-mapped columns,
/// `reach[j]` is the loop column from which j is reachable, and `depth` is
/// the longest chain of distinct vertices.
struct SignDependencyGraph {
  std::size_t n = 0;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> loops;
  std::vector<std::size_t> reach;
  std::size_t depth = 0;
};

inline SignDependencyGraph build_dependency_graph(const MatrixProfile& p) {
  SignDependencyGraph g;
  g.n = p.cols;
  g.parent.resize(g.n);
  g.reach.resize(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    g.parent[j] = p.row_argmax[p.col_argmax[j]];
    if (g.parent[j] == j) g.loops.push_back(j);
  }
  g.depth = 1;
  for (std::size_t j = 0; j < g.n; ++j) {
    std::size_t cur = j, steps = 0;
    while (g.parent[cur] != cur) {
      cur = g.parent[cur];
      ++steps;
    }
    g.reach[j] = cur;
    g.depth = std::max(g.depth, steps + 1);
  }
  return g;
}

/// Sign map of one full sweep: the signs of the next v depend only on the
/// signs of the current one,
///   sign v'_j = sign(a at column-j peak) * sign(row peak of that row) * t[parent(j)].
inline SignVector v_transition(const MatrixProfile& p, const SignVector& t) {
  if (t.size() != p.cols) throw DimensionMismatch("sign vector length must equal columns");
  std::vector<std::int8_t> out(p.cols);
  for (std::size_t j = 0; j < p.cols; ++j) {
    std::size_t i = p.col_argmax[j];
    int q = p.col_max_sign[j] * p.row_max_sign[i];
    out[j] = static_cast<std::int8_t>(q * t[p.row_argmax[i]]);
  }
  return SignVector(std::move(out));
}

/// Signs of the row-fit vector u produced from any v with signs t:
/// sign u_i = sign(a at row-i peak) * t[row peak column].
inline SignVector u_signs(const MatrixProfile& p, const SignVector& t) {
  if (t.size() != p.cols) throw DimensionMismatch("sign vector length must equal columns");
  std::vector<std::int8_t> out(p.rows);
  for (std::size_t i = 0; i < p.rows; ++i) {
    out[i] = static_cast<std::int8_t>(p.row_max_sign[i] * t[p.row_argmax[i]]);
  }
  return SignVector(std::move(out));
}

struct TransitionComponent {
  SignVector loop_vertex;
  std::size_t size = 0;
  std::size_t depth = 0;
};

struct TransitionGraphSummary {
  std::size_t n = 0;
  std::size_t loop_count = 0;  // |F|
  std::uint64_t vertex_count = 0;
  std::vector<TransitionComponent> components;
};

/// Full sign transition graph over all 2^n sign vectors, stored as masks
/// (bit j set means component j is +1). next[t] is the image of t under
/// one sweep, root[t] the eventual fixed point, dist[t] the number of
/// sweeps to reach it.
struct TransitionGraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> next;
  std::vector<std::uint32_t> root;
  std::vector<std::uint16_t> dist;
  std::size_t depth = 0;
};

struct TransitionEnumeration {
  TransitionGraphSummary summary;
  TransitionGraph graph;
};

inline TransitionEnumeration enumerate_transition_graph(const DenseMatrix& a,
                                                        std::size_t limit = 20) {
  const MatrixProfile prof = make_profile(a);
  const std::size_t n = a.cols();
  if (n > limit || n > 25) {
    throw TooLarge("transition graph enumeration limited to " +
                   std::to_string(std::min<std::size_t>(limit, 25)) + " columns, got " +
                   std::to_string(n));
  }
  const SignDependencyGraph sdg = build_dependency_graph(prof);
  const std::uint32_t count = std::uint32_t{1} << n;

  std::vector<std::uint32_t> src(n);
  std::uint32_t flip = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = prof.col_argmax[j];
    src[j] = static_cast<std::uint32_t>(prof.row_argmax[i]);
    if (prof.col_max_sign[j] * prof.row_max_sign[i] < 0) flip |= std::uint32_t{1} << j;
  }

  TransitionGraph g;
  g.n = n;
  g.next.resize(count);
  for (std::uint32_t t = 0; t < count; ++t) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < n; ++j) out |= ((t >> src[j]) & 1u) << j;
    g.next[t] = out ^ flip;
  }

  // Roots and distances by chasing the functional map with memoization.
  g.root.assign(count, count);
  g.dist.assign(count, 0);
  std::vector<std::uint32_t> path;
  for (std::uint32_t t = 0; t < count; ++t) {
    if (g.root[t] != count) continue;
    path.clear();
    std::uint32_t cur = t;
    while (g.root[cur] == count && g.next[cur] != cur) {
      path.push_back(cur);
      cur = g.next[cur];
      if (path.size() > count) throw Error("internal: sign transition map has a non-loop cycle");
    }
    std::uint32_t base_root = (g.next[cur] == cur) ? cur : g.root[cur];
    std::uint32_t base_dist = (g.next[cur] == cur) ? 0 : g.dist[cur];
    if (g.next[cur] == cur) g.root[cur] = cur;
    for (std::size_t s = path.size(); s-- > 0;) {
      ++base_dist;
      g.root[path[s]] = base_root;
      g.dist[path[s]] = static_cast<std::uint16_t>(base_dist);
    }
  }

  std::map<std::uint32_t, std::pair<std::size_t, std::size_t>> comps;  // root -> (size, max dist)
  std::size_t max_dist = 0;
  for (std::uint32_t t = 0; t < count; ++t) {
    auto& c = comps[g.root[t]];
    c.first += 1;
    c.second = std::max<std::size_t>(c.second, g.dist[t]);
    max_dist = std::max<std::size_t>(max_dist, g.dist[t]);
  }
  g.depth = max_dist + 1;

  TransitionEnumeration e{TransitionGraphSummary{}, std::move(g)};
  e.summary.n = n;
  e.summary.loop_count = sdg.loops.size();
  e.summary.vertex_count = count;
  for (const auto& [root, c] : comps) {
    e.summary.components.push_back(
        TransitionComponent{SignVector::from_mask(root, n), c.first, c.second + 1});
  }
  return e;
}

/// Checks every structural claim about the transition graph against the
/// dependency graph: membership determined by agreement on F, component
/// count 2^k and sizes 2^(n-k), one loop vertex per component, the
/// d-recurrence, component isomorphism via the d-map, and equal depths.
/// Violations indicate an implementation bug, not bad data.
struct StructureReport {
  bool membership_iff_f = true;
  bool counts_ok = true;
  bool unique_loop_ok = true;
  bool d_recurrence_ok = true;
  bool isomorphism_ok = true;
  bool depth_ok = true;
  std::vector<std::string> failures;

  bool all_pass() const {
    return membership_iff_f && counts_ok && unique_loop_ok && d_recurrence_ok && isomorphism_ok &&
           depth_ok;
  }
};

inline StructureReport validate_structure(const TransitionEnumeration& e,
                                          const SignDependencyGraph& sdg) {
  StructureReport rep;
  const TransitionGraph& g = e.graph;
  const std::size_t n = g.n;
  const std::uint32_t count = std::uint32_t{1} << n;
  const std::size_t k = sdg.loops.size();

  std::uint32_t f_mask = 0;
  for (std::size_t j : sdg.loops) f_mask |= std::uint32_t{1} << j;

  // Same F-restriction <=> same root, and roots agree with t on F.
  std::unordered_map<std::uint32_t, std::uint32_t> root_by_fkey;
  for (std::uint32_t t = 0; t < count; ++t) {
    if ((g.root[t] & f_mask) != (t & f_mask)) {
      rep.membership_iff_f = false;
      rep.failures.push_back("root differs from vertex on F");
      break;
    }
    auto [it, inserted] = root_by_fkey.emplace(t & f_mask, g.root[t]);
    if (!inserted && it->second != g.root[t]) {
      rep.membership_iff_f = false;
      rep.failures.push_back("vertices agreeing on F have different roots");
      break;
    }
  }

  if (e.summary.components.size() != (std::size_t{1} << k)) {
    rep.counts_ok = false;
    rep.failures.push_back("component count is not 2^|F|");
  }
  for (const auto& c : e.summary.components) {
    if (c.size != (std::size_t{1} << (n - k))) {
      rep.counts_ok = false;
      rep.failures.push_back("component size is not 2^(n-|F|)");
      break;
    }
  }

  // Exactly one loop vertex per component, equal to the component root.
  std::unordered_map<std::uint32_t, std::size_t> loops_per_root;
  for (std::uint32_t t = 0; t < count; ++t) {
    if (g.next[t] == t) {
      loops_per_root[g.root[t]] += 1;
      if (g.root[t] != t) {
        rep.unique_loop_ok = false;
        rep.failures.push_back("loop vertex differs from its component root");
      }
    }
  }
  for (const auto& c : e.summary.components) {
    auto it = loops_per_root.find(static_cast<std::uint32_t>(c.loop_vertex.to_mask()));
    if (it == loops_per_root.end() || it->second != 1) {
      rep.unique_loop_ok = false;
      rep.failures.push_back("component does not have exactly one loop vertex");
      break;
    }
  }

  // d(t) agreement mask: bit j set means t agrees with its root at j.
  auto dmask = [&](std::uint32_t t) { return ~(t ^ g.root[t]) & (count - 1); };
  for (std::uint32_t t = 0; t < count && rep.d_recurrence_ok; ++t) {
    std::uint32_t dt = dmask(t);
    std::uint32_t dn = dmask(g.next[t]);
    for (std::size_t j = 0; j < n; ++j) {
      if (((dn >> j) & 1u) != ((dt >> sdg.parent[j]) & 1u)) {
        rep.d_recurrence_ok = false;
        rep.failures.push_back("d-recurrence violated");
        break;
      }
    }
  }

  // The d-map matches components bijectively and commutes with the sweep.
  if (!e.summary.components.empty()) {
    std::uint32_t ref_root = static_cast<std::uint32_t>(e.summary.components[0].loop_vertex.to_mask());
    std::unordered_map<std::uint32_t, std::uint32_t> ref_by_d;
    for (std::uint32_t t = 0; t < count; ++t) {
      if (g.root[t] == ref_root) ref_by_d.emplace(dmask(t), t);
    }
    for (std::uint32_t t = 0; t < count && rep.isomorphism_ok; ++t) {
      auto it = ref_by_d.find(dmask(t));
      if (it == ref_by_d.end()) {
        rep.isomorphism_ok = false;
        rep.failures.push_back("d-value missing from reference component");
        break;
      }
      std::uint32_t image = it->second;
      auto nx = ref_by_d.find(dmask(g.next[t]));
      if (nx == ref_by_d.end() || nx->second != g.next[image]) {
        rep.isomorphism_ok = false;
        rep.failures.push_back("d-map does not commute with the sweep");
      }
    }
  }

  if (g.depth != sdg.depth) {
    rep.depth_ok = false;
    rep.failures.push_back("transition graph depth differs from dependency graph depth");
  }
  return rep;
}

/// DOT rendering with 1-based column labels; loop vertices doubled.
inline std::string to_dot(const SignDependencyGraph& g) {
  std::string out = "digraph sign_dependency {\n";
  for (std::size_t j = 0; j < g.n; ++j) {
    out += "  \"" + std::to_string(j + 1) + "\"";
    if (g.parent[j] == j) out += " [shape=doublecircle]";
    out += ";\n";
  }
  for (std::size_t j = 0; j < g.n; ++j) {
    out += "  \"" + std::to_string(g.parent[j] + 1) + "\" -> \"" + std::to_string(j + 1) + "\";\n";
  }
  out += "}\n";
  return out;
}

inline std::string to_dot(const TransitionEnumeration& e) {
  const TransitionGraph& g = e.graph;
  const std::uint32_t count = std::uint32_t{1} << g.n;
  std::string out = "digraph sign_transition {\n";
  for (std::uint32_t t = 0; t < count; ++t) {
    out += "  \"" + SignVector::from_mask(t, g.n).to_string() + "\"";
    if (g.next[t] == t) out += " [shape=doublecircle]";
    out += ";\n";
  }
  for (std::uint32_t t = 0; t < count; ++t) {
    out += "  \"" + SignVector::from_mask(t, g.n).to_string() + "\" -> \"" +
           SignVector::from_mask(g.next[t], g.n).to_string() + "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cheb1
