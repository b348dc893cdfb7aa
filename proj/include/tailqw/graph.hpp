#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tailqw/linalg.hpp"

namespace tailqw {

struct Edge {
  int u = 0;
  int v = 0;
  cplx weight{1.0, 0.0};  // A[u][v]; A[v][u] is its conjugate
};

/// Finite simple graph with complex Hermitian edge weights. Immutable.
///
/// Entries are stored once per unordered pair with u < v. Zero weights are
/// dropped, loops and repeated pairs are rejected.
class Graph {
public:
  using EntryMap = std::map<std::pair<int, int>, cplx>;

  Graph() = default;
  Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {});

  int size() const noexcept { return n_; }
  const EntryMap& entries() const noexcept { return entries_; }
  std::size_t edge_count() const noexcept { return entries_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(int v) const;

  cplx weight(int u, int v) const;
  // Neighbors in ascending id order.
  const std::vector<int>& neighbors(int u) const;
  // Row sum of A.
  cplx weighted_degree(int u) const;
  std::vector<Edge> edges() const;

  CMatrix adjacency() const;
  HermitianMatrix hermitian() const { return HermitianMatrix(adjacency()); }

  bool is_real() const;
  // Every weight exactly 1.
  bool is_unweighted() const;
  // Every real and imaginary part is an integer of magnitude below 2^31.
  bool has_gaussian_integer_weights() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
  }

private:
  int n_ = 0;
  EntryMap entries_;
  std::vector<std::vector<int>> adjacency_lists_;
  std::vector<std::string> labels_;
};

struct Tail {
  int vertex = 0;
  double weight = 1.0;  // coupling to the first tail site

  bool operator==(const Tail&) const = default;
};

/// A finite graph with semi-infinite path tails hanging off listed vertices.
class TailedGraph {
public:
  TailedGraph() = default;
  TailedGraph(Graph base, std::vector<Tail> tails);

  const Graph& base() const noexcept { return base_; }
  const std::vector<Tail>& tails() const noexcept { return tails_; }
  int finite_size() const noexcept { return base_.size(); }
  bool has_tail_at(int v) const;

  bool operator==(const TailedGraph& other) const {
    return base_ == other.base_ && tails_ == other.tails_;
  }

private:
  Graph base_;
  std::vector<Tail> tails_;
};

struct TailMarker {};
struct FinitePiece {
  Graph graph;
  int root = 0;
};
using RootedPiece = std::variant<FinitePiece, TailMarker>;

// ---- standard families -----------------------------------------------------

Graph complete(int n);
Graph path(int n);
Graph empty_graph(int n);
// Vertex S subset of {1..n} has id sum_{j in S} 2^(j-1). Requires 0 <= n <= 20.
Graph hypercube(int n);
// Weighted path on n+1 vertices, weight sqrt((k+1)(n-k)) between k and k+1.
Graph krawtchouk_chain(int n);
// A[0][1] = A[1][2] = A[2][0] = -i.
Graph oriented_clique3();

// ---- composite constructions -----------------------------------------------

// G's vertices first, then H's (offset by |V(G)|).
Graph disjoint_union(const Graph& g, const Graph& h);
Graph join(const Graph& g, const Graph& h);
// Apex is vertex 0.
Graph cone(const Graph& g);
// Coclique vertices are 0..m-1.
Graph mcone(int m, const Graph& g);
// Vertex (a, b) has id a*|V(H)| + b; labels are "label_a,label_b".
Graph cartesian(const Graph& g, const Graph& h);
// G keeps ids; H minus v follows in ascending order; merged vertex is u.
Graph one_sum(const Graph& g, int u, const Graph& h, int v);
// Consecutive parts fully joined by weight-1 edges.
Graph series_graph(std::span<const Graph> parts);

// Base vertex i is identified with the root of piece i. Base keeps ids
// 0..n-1; non-root vertices of finite pieces follow in piece order, each in
// ascending id order. TailMarker pieces become tails on their base vertex.
TailedGraph rooted_product(const Graph& base, std::span<const RootedPiece> pieces);
// result[i][w] = product id of vertex w of piece i (empty for tail pieces).
std::vector<std::vector<int>> rooted_product_vertex_map(const Graph& base,
                                                        std::span<const RootedPiece> pieces);

TailedGraph attach_tail(const Graph& g, int v, double weight = 1.0);
TailedGraph attach_tail(const TailedGraph& t, int v, double weight = 1.0);

// Adds extra weights on top of G's entries (summing where both exist).
Graph with_edges(const Graph& g, std::span<const Edge> extra);
Graph with_labels(const Graph& g, std::vector<std::string> labels);

// ---- truncation ------------------------------------------------------------

/// Finite section of the tailed operator: base vertices 0..n-1, then for
/// tail i the sites n + i*L .. n + (i+1)*L - 1, hard (Dirichlet) cut.
HermitianMatrix truncate(const TailedGraph& t, int tail_length);
inline int tail_site(const TailedGraph& t, int tail_index, int site, int tail_length) {
  return t.finite_size() + tail_index * tail_length + site;
}

}  // namespace tailqw
