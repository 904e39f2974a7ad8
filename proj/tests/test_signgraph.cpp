#include <gtest/gtest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cheb1/altmin.hpp"
#include "cheb1/random.hpp"
#include "cheb1/signgraph.hpp"
#include "test_support.hpp"

using namespace cheb1;
using testsupport::mk;

namespace {

SignVector sv(std::initializer_list<int> signs) {
  std::vector<std::int8_t> s;
  for (int x : signs) s.push_back(static_cast<std::int8_t>(x));
  return SignVector(std::move(s));
}

}  // namespace

TEST(VTransition, CollapsesToFirstColumnSign) {
  auto p = make_profile(mk({{3, 2}, {1, 0.5}}));
  EXPECT_EQ(v_transition(p, sv({1, 1})), sv({1, 1}));
  EXPECT_EQ(v_transition(p, sv({1, -1})), sv({1, 1}));
  EXPECT_EQ(v_transition(p, sv({-1, 1})), sv({-1, -1}));
  EXPECT_EQ(v_transition(p, sv({-1, -1})), sv({-1, -1}));
}

TEST(VTransition, IdentityActsAsIdentity) {
  auto p = make_profile(DenseMatrix::identity(2));
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    SignVector t = SignVector::from_mask(mask, 2);
    EXPECT_EQ(v_transition(p, t), t);
  }
}

TEST(VTransition, OddInT) {
  NormalRng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    DenseMatrix a = random_pc_matrix(5, 6, rng);
    auto p = make_profile(a);
    SignVector t = SignVector::from_mask(static_cast<std::uint64_t>(rng.uniform01() * 64), 6);
    EXPECT_EQ(v_transition(p, t.negated()), v_transition(p, t).negated());
  }
}

TEST(VTransition, MatchesFullSweepSigns) {
  NormalRng rng(79);
  for (int trial = 0; trial < 200; ++trial) {
    DenseMatrix a = random_pc_matrix(4, 5, rng);
    auto p = make_profile(a);
    ChebVector v = random_cheb_vector(5, rng);
    SignVector target = SignVector::from_reals(fit_cols(a, fit_rows(a, v)).values());
    EXPECT_EQ(v_transition(p, SignVector::from_reals(v.values())), target);
  }
}

TEST(USigns, Examples) {
  auto id = make_profile(DenseMatrix::identity(2));
  EXPECT_EQ(u_signs(id, sv({1, -1})), sv({1, -1}));

  auto p = make_profile(mk({{3, 2}, {1, 0.5}}));
  EXPECT_EQ(u_signs(p, sv({-1, 1})), sv({-1, -1}));
}

TEST(USigns, MatchesRowFitSigns) {
  NormalRng rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    DenseMatrix a = random_pc_matrix(6, 4, rng);
    auto p = make_profile(a);
    ChebVector v = random_cheb_vector(4, rng);
    EXPECT_EQ(u_signs(p, SignVector::from_reals(v.values())),
              SignVector::from_reals(fit_rows(a, v).values()));
  }
}

TEST(DependencyGraph, Examples) {
  auto g = build_dependency_graph(make_profile(mk({{3, 2}, {1, 0.5}})));
  EXPECT_EQ(g.parent, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(g.loops, (std::vector<std::size_t>{0}));
  EXPECT_EQ(g.depth, 2u);
  EXPECT_EQ(g.reach, (std::vector<std::size_t>{0, 0}));

  auto id = build_dependency_graph(make_profile(DenseMatrix::identity(4)));
  EXPECT_EQ(id.loops, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(id.depth, 1u);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(id.reach[j], j);
}

TEST(DependencyGraph, EveryVertexReachesALoop) {
  NormalRng rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = build_dependency_graph(make_profile(random_pc_matrix(7, 7, rng)));
    EXPECT_FALSE(g.loops.empty());
    for (std::size_t j = 0; j < g.n; ++j) {
      EXPECT_EQ(g.parent[g.reach[j]], g.reach[j]);
    }
  }
}

TEST(TransitionGraph, TwoByTwoExample) {
  auto e = enumerate_transition_graph(mk({{3, 2}, {1, 0.5}}));
  EXPECT_EQ(e.summary.vertex_count, 4u);
  ASSERT_EQ(e.summary.components.size(), 2u);
  EXPECT_EQ(e.summary.components[0].loop_vertex.to_string(), "--");
  EXPECT_EQ(e.summary.components[1].loop_vertex.to_string(), "++");
  EXPECT_EQ(e.summary.components[0].size, 2u);
  EXPECT_EQ(e.graph.depth, 2u);
}

TEST(TransitionGraph, IdentitySingletons) {
  auto e = enumerate_transition_graph(DenseMatrix::identity(2));
  EXPECT_EQ(e.summary.components.size(), 4u);
  for (const auto& c : e.summary.components) {
    EXPECT_EQ(c.size, 1u);
    EXPECT_EQ(c.depth, 1u);
  }
  EXPECT_EQ(e.graph.depth, 1u);
}

TEST(TransitionGraph, RefusesLargeMatrices) {
  EXPECT_THROW(enumerate_transition_graph(DenseMatrix::identity(3), 2), TooLarge);
}

TEST(TransitionGraph, LoopColumnSignsArePinned) {
  NormalRng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a = random_pc_matrix(5, 5, rng);
    auto p = make_profile(a);
    auto g = build_dependency_graph(p);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      SignVector t = SignVector::from_mask(mask, 5);
      SignVector image = v_transition(p, t);
      for (std::size_t j : g.loops) EXPECT_EQ(image[j], t[j]);
    }
  }
}

TEST(TransitionGraph, RootIsFixedUnderSweep) {
  NormalRng rng(101);
  for (int trial = 0; trial < 15; ++trial) {
    auto e = enumerate_transition_graph(random_pc_matrix(5, 6, rng));
    const auto& g = e.graph;
    std::uint32_t count = 1u << g.n;
    for (std::uint32_t t = 0; t < count; ++t) {
      EXPECT_EQ(g.root[g.next[t]], g.root[t]);
      bool is_loop = g.next[t] == t;
      bool d_all_ones = g.root[t] == t;
      EXPECT_EQ(is_loop, d_all_ones);
    }
  }
}

TEST(TransitionGraph, DepthIterationLandsOnLoops) {
  NormalRng rng(103);
  for (int trial = 0; trial < 15; ++trial) {
    DenseMatrix a = random_pc_matrix(6, 5, rng);
    auto e = enumerate_transition_graph(a);
    auto p = make_profile(a);
    const auto& g = e.graph;
    std::size_t depth = g.depth;
    bool some_needs_full_depth = false;
    for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
      SignVector t = SignVector::from_mask(mask, g.n);
      for (std::size_t k = 0; k + 1 < depth; ++k) t = v_transition(p, t);
      std::uint32_t reached = static_cast<std::uint32_t>(t.to_mask());
      EXPECT_EQ(g.next[reached], reached);
      if (depth >= 2 && g.dist[mask] == depth - 1) some_needs_full_depth = true;
    }
    if (depth >= 2) {
      EXPECT_TRUE(some_needs_full_depth);
    }
  }
}

TEST(ValidateStructure, PassesOnExamplesAndRandoms) {
  for (const DenseMatrix& a : {mk({{3, 2}, {1, 0.5}}), DenseMatrix::identity(3)}) {
    auto e = enumerate_transition_graph(a);
    auto g = build_dependency_graph(make_profile(a));
    auto rep = validate_structure(e, g);
    EXPECT_TRUE(rep.all_pass()) << (rep.failures.empty() ? "" : rep.failures.front());
  }
  NormalRng rng(107);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 3 + static_cast<std::size_t>(rng.uniform01() * 8);
    std::size_t m = 3 + static_cast<std::size_t>(rng.uniform01() * 8);
    DenseMatrix a = random_pc_matrix(m, n, rng);
    auto e = enumerate_transition_graph(a);
    auto g = build_dependency_graph(make_profile(a));
    auto rep = validate_structure(e, g);
    EXPECT_TRUE(rep.all_pass()) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_EQ(e.summary.components.size(), std::size_t{1} << g.loops.size());
  }
}

TEST(ValidateStructure, AlignedPeaksGiveDepthTwoAndTwoLoops) {
  // All row peaks in column 0 and all column peaks in row 0.
  DenseMatrix a = mk({{9, 4, 5}, {3, 1, 2}, {6, 2, 3.5}});
  auto g = build_dependency_graph(make_profile(a));
  EXPECT_EQ(g.loops, (std::vector<std::size_t>{0}));
  EXPECT_EQ(g.depth, 2u);
  auto e = enumerate_transition_graph(a);
  EXPECT_EQ(e.summary.components.size(), 2u);
  EXPECT_EQ(e.graph.depth, 2u);
  EXPECT_TRUE(validate_structure(e, g).all_pass());
}

TEST(Dot, DependencyGraphRendering) {
  auto g = build_dependency_graph(make_profile(DenseMatrix::identity(2)));
  std::string dot = to_dot(g);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"1\" -> \"1\";"), std::string::npos);
  EXPECT_NE(dot.find("\"2\" -> \"2\";"), std::string::npos);
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
}

TEST(Dot, TransitionGraphRendering) {
  auto e = enumerate_transition_graph(mk({{3, 2}, {1, 0.5}}));
  std::string dot = to_dot(e);
  EXPECT_NE(dot.find("\"+-\" -> \"++\";"), std::string::npos);
  EXPECT_NE(dot.find("\"++\" -> \"++\";"), std::string::npos);
  // Balanced braces and a closing newline.
  EXPECT_EQ(dot.front(), 'd');
  EXPECT_EQ(dot[dot.size() - 2], '}');
}
