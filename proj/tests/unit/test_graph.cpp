#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "generators.hpp"
#include "tailqw/errors.hpp"
#include "tailqw/graph.hpp"

using namespace tailqw;

namespace {

RVector spectrum(const Graph& g) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(g.adjacency()).eigenvalues();
}

CMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

bool isomorphic_by_identity(const Graph& a, const Graph& b) { return a.adjacency() == b.adjacency(); }

}  // namespace

TEST(Graph, StoresUpperTriangleAndDropsZeroWeights) {
  const std::vector<Edge> edges{{2, 0, cplx(0.0, 1.0)}, {1, 2, 0.0}};
  const Graph g(3, edges);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weight(0, 2), cplx(0.0, -1.0));
  EXPECT_EQ(g.weight(2, 0), cplx(0.0, 1.0));
  EXPECT_EQ(g.weight(1, 2), cplx(0.0, 0.0));
}

TEST(Graph, RejectsLoopsRepeatsAndBadIds) {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> repeat{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  EXPECT_THROW(Graph(3, loop), ValidationError);
  EXPECT_THROW(Graph(3, repeat), ValidationError);
  EXPECT_THROW(Graph(3, range), ValidationError);
  EXPECT_THROW(Graph(-1, {}), ValidationError);
}

TEST(Graph, LabelsFallBackToIndex) {
  EXPECT_EQ(path(3).label(2), "2");
  EXPECT_EQ(with_labels(path(2), {"a", "b"}).label(1), "b");
  EXPECT_THROW(with_labels(path(2), {"a"}), ValidationError);
}

TEST(Complete, SmallCases) {
  EXPECT_EQ(complete(1).size(), 1);
  EXPECT_EQ(complete(1).edge_count(), 0u);
  EXPECT_EQ(complete(3).adjacency(), real_matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_THROW(complete(0), ValidationError);
}

TEST(Complete, SpectrumOfK6) {
  const RVector s = spectrum(complete(6));
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(s[i], -1.0, 1e-12);
  EXPECT_NEAR(s[5], 5.0, 1e-12);
}

TEST(Families, PathAndEmpty) {
  EXPECT_EQ(path(3).adjacency(), real_matrix({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(empty_graph(4).edge_count(), 0u);
  EXPECT_THROW(path(0), ValidationError);
}

TEST(Families, Hypercube) {
  EXPECT_TRUE(isomorphic_by_identity(hypercube(1), complete(2)));
  const Graph q3 = hypercube(3);
  EXPECT_EQ(q3.size(), 8);
  EXPECT_EQ(q3.edge_count(), 12u);
  for (int v = 0; v < 8; ++v) EXPECT_EQ(q3.neighbors(v).size(), 3u);
  EXPECT_EQ(q3.weight(0b101, 0b100), cplx(1.0, 0.0));
  EXPECT_EQ(q3.weight(0b101, 0b110), cplx(0.0, 0.0));
  EXPECT_EQ(hypercube(0).size(), 1);
  EXPECT_THROW(hypercube(21), ValidationError);
  EXPECT_THROW(hypercube(-1), ValidationError);
}

TEST(Families, KrawtchoukChainWeights) {
  const Graph k3 = krawtchouk_chain(3);
  EXPECT_NEAR(k3.weight(0, 1).real(), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(k3.weight(1, 2).real(), 2.0, 1e-15);
  EXPECT_NEAR(k3.weight(2, 3).real(), std::sqrt(3.0), 1e-15);
  EXPECT_TRUE(isomorphic_by_identity(krawtchouk_chain(1), complete(2)));
  const Graph k4 = krawtchouk_chain(4);
  const double expected[] = {2.0, std::sqrt(6.0), std::sqrt(6.0), 2.0};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(k4.weight(k, k + 1).real(), expected[k], 1e-15);
}

TEST(Families, OrientedClique) {
  const Graph g = oriented_clique3();
  EXPECT_EQ(g.weight(0, 1), cplx(0.0, -1.0));
  EXPECT_EQ(g.weight(1, 2), cplx(0.0, -1.0));
  EXPECT_EQ(g.weight(2, 0), cplx(0.0, -1.0));
  const CMatrix a = g.adjacency();
  EXPECT_EQ(a, a.adjoint());
  const RVector s = spectrum(g);
  EXPECT_NEAR(s[0], -std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(s[1], 0.0, 1e-12);
  EXPECT_NEAR(s[2], std::sqrt(3.0), 1e-12);
}

TEST(Composite, JoinConeMcone) {
  EXPECT_TRUE(isomorphic_by_identity(join(complete(1), complete(2)), complete(3)));
  const Graph j = join(path(3), complete(2));
  const CMatrix a = j.adjacency();
  EXPECT_EQ(a.topRightCorner(3, 2), CMatrix::Ones(3, 2));
  EXPECT_EQ(a.bottomLeftCorner(2, 3), CMatrix::Ones(2, 3));
  const Graph g = path(4);
  EXPECT_EQ(mcone(1, g), cone(g));
  EXPECT_EQ(cone(g).neighbors(0).size(), 4u);
}

TEST(Composite, JoinDegrees) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = gen::graph(rng, 5), h = gen::graph(rng, 4);
    const Graph j = join(g, h);
    for (int v = 0; v < 5; ++v) EXPECT_EQ(j.neighbors(v).size(), g.neighbors(v).size() + 4);
    for (int v = 0; v < 4; ++v) EXPECT_EQ(j.neighbors(5 + v).size(), h.neighbors(v).size() + 5);
  }
}

TEST(Composite, Cartesian) {
  const Graph c4 = cartesian(complete(2), complete(2));
  EXPECT_EQ(c4.edge_count(), 4u);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(c4.neighbors(v).size(), 2u);
  const Graph grid = cartesian(path(3), path(3));
  EXPECT_EQ(grid.size(), 9);
  EXPECT_EQ(grid.edge_count(), 12u);
  EXPECT_EQ(grid.neighbors(0).size(), 2u);
  EXPECT_EQ(grid.neighbors(4).size(), 4u);
  const Graph p3 = with_labels(path(3), {"1", "2", "3"});
  EXPECT_EQ(cartesian(p3, p3).label(5), "2,3");
}

TEST(Composite, CartesianMatchesKroneckerFormula) {
  gen::Rng rng(32);
  const Graph g = gen::graph(rng, 3, 0.6, true), h = gen::graph(rng, 4, 0.6, true);
  const CMatrix expected = Eigen::kroneckerProduct(g.adjacency(), CMatrix::Identity(4, 4)).eval() +
                           Eigen::kroneckerProduct(CMatrix::Identity(3, 3), h.adjacency()).eval();
  EXPECT_EQ(cartesian(g, h).adjacency(), expected);
}

TEST(CompositeProperty, CartesianSpectrumIsPairwiseSums) {
  gen::Rng rng(33);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = gen::graph(rng, size(rng), 0.5, trial % 2 == 1);
    const Graph h = gen::graph(rng, size(rng), 0.5, trial % 3 == 1);
    const RVector sg = spectrum(g), sh = spectrum(h);
    std::vector<double> sums;
    for (double a : sg) for (double b : sh) sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    const RVector got = spectrum(cartesian(g, h));
    ASSERT_EQ(static_cast<std::size_t>(got.size()), sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) EXPECT_NEAR(got[static_cast<Eigen::Index>(i)], sums[i], 1e-10);
  }
}

TEST(Composite, OneSum) {
  EXPECT_TRUE(isomorphic_by_identity(one_sum(complete(2), 1, complete(2), 0), path(3)));
  const Graph g = one_sum(complete(3), 0, path(4), 1);
  EXPECT_EQ(g.size(), 3 + 4 - 1);
  // Path vertex 1 is merged into clique vertex 0; its neighbours 0 and 2 follow at ids 3, 4.
  EXPECT_EQ(g.neighbors(0), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(g.neighbors(5), (std::vector<int>{4}));
  EXPECT_THROW(one_sum(complete(3), 3, path(2), 0), ValidationError);
  EXPECT_THROW(one_sum(complete(3), 0, path(2), 2), ValidationError);
}

TEST(CompositeProperty, OneSumPreservesWeights) {
  gen::Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = gen::graph(rng, 4, 0.6, true), h = gen::graph(rng, 5, 0.6, true);
    const Graph s = one_sum(g, 2, h, 0);
    for (const auto& [key, w] : g.entries()) EXPECT_EQ(s.weight(key.first, key.second), w);
    cplx total_h{0.0, 0.0}, total_s{0.0, 0.0};
    for (const auto& [key, w] : h.entries()) total_h += w;
    for (const auto& [key, w] : s.entries()) total_s += w;
    for (const auto& [key, w] : g.entries()) total_s -= w;
    EXPECT_EQ(total_s, total_h);
  }
}

TEST(Composite, SeriesGraph) {
  const std::vector<Graph> three_points{complete(1), complete(1), complete(1)};
  EXPECT_TRUE(isomorphic_by_identity(series_graph(three_points), path(3)));
  const Graph g = cartesian(path(2), path(3));
  const std::vector<Graph> coned{complete(1), g};
  EXPECT_EQ(series_graph(coned), cone(g));
  const std::vector<Graph> oriented{complete(1), oriented_clique3(), oriented_clique3()};
  const Graph s = series_graph(oriented);
  EXPECT_EQ(s.size(), 7);
  EXPECT_EQ(s.neighbors(0), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.weight(1, 2), cplx(0.0, -1.0));
  EXPECT_EQ(s.weight(1, 4), cplx(1.0, 0.0));
  EXPECT_EQ(s.weight(0, 4), cplx(0.0, 0.0));
  EXPECT_THROW(series_graph(std::span<const Graph>{}), ValidationError);
}

TEST(Composite, RootedProduct) {
  const Graph piece = krawtchouk_chain(3);
  const std::vector<RootedPiece> single{FinitePiece{piece, 0}};
  EXPECT_EQ(rooted_product(complete(1), single).base(), piece);

  const std::vector<RootedPiece> dual{FinitePiece{piece, 0}, TailMarker{}, FinitePiece{piece, 0}};
  const TailedGraph t = rooted_product(path(3), dual);
  EXPECT_EQ(t.finite_size(), 3 + 2 * (4 - 1));
  ASSERT_EQ(t.tails().size(), 1u);
  EXPECT_EQ(t.tails()[0].vertex, 1);
  const auto map = rooted_product_vertex_map(path(3), dual);
  EXPECT_EQ(map[0][0], 0);
  EXPECT_EQ(map[2][0], 2);
  EXPECT_TRUE(map[1].empty());
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(t.base().weight(map[0][k], map[0][k + 1]), piece.weight(k, k + 1));
    EXPECT_EQ(t.base().weight(map[2][k], map[2][k + 1]), piece.weight(k, k + 1));
  }
  const std::vector<RootedPiece> short_list{TailMarker{}};
  EXPECT_THROW(rooted_product(path(3), short_list), ValidationError);
}

TEST(Tails, AttachAndTruncate) {
  const TailedGraph lollipop = attach_tail(complete(4), 0);
  EXPECT_TRUE(lollipop.has_tail_at(0));
  EXPECT_THROW(attach_tail(lollipop, 0), ValidationError);
  EXPECT_THROW(attach_tail(complete(4), 4), ValidationError);
  EXPECT_THROW(attach_tail(complete(4), 1, 0.0), ValidationError);

  const TailedGraph two = attach_tail(attach_tail(path(2), 0), 1, 2.0);
  const CMatrix m = truncate(two, 3).matrix();
  ASSERT_EQ(m.rows(), 2 + 2 * 3);
  EXPECT_EQ(m(0, 2), cplx(1.0, 0.0));  // vertex 0 to first site of tail 0
  EXPECT_EQ(m(2, 3), cplx(1.0, 0.0));
  EXPECT_EQ(m(4, 5), cplx(0.0, 0.0));  // Dirichlet cut between tails
  EXPECT_EQ(m(1, 5), cplx(2.0, 0.0));  // weighted coupling of tail 1
  EXPECT_EQ(tail_site(two, 1, 2, 3), 7);
  EXPECT_THROW(truncate(two, 0), ValidationError);
}

TEST(GraphProperty, ConstructionsAreExactlyHermitian) {
  gen::Rng rng(35);
  const Graph g = gen::graph(rng, 5, 0.5, true);
  const std::vector<Graph> outputs{cone(g), join(g, oriented_clique3()), cartesian(g, oriented_clique3()),
                                   one_sum(g, 1, oriented_clique3(), 2), mcone(3, g), hypercube(4),
                                   krawtchouk_chain(5)};
  for (const auto& out : outputs) EXPECT_EQ(hermiticity_defect(out.adjacency()), 0.0);
}
