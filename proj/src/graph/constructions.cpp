#include <cmath>
#include <string>

#include "tailqw/errors.hpp"
#include "tailqw/graph.hpp"

namespace tailqw {

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw ValidationError(std::string(what) + ": n must be at least 1");
}

void append_shifted(std::vector<Edge>& out, const Graph& g, int offset) {
  for (const auto& e : g.edges()) out.push_back({e.u + offset, e.v + offset, e.weight});
}

void check_root(const Graph& g, int v, const char* what) {
  if (v < 0 || v >= g.size())
    throw ValidationError(std::string(what) + ": vertex " + std::to_string(v) +
                          " out of range [0, " + std::to_string(g.size()) + ")");
}

}  // namespace

Graph complete(int n) {
  require_positive(n, "complete");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph path(int n) {
  require_positive(n, "path");
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, edges);
}

Graph empty_graph(int n) {
  require_positive(n, "empty_graph");
  return Graph(n, {});
}

Graph hypercube(int n) {
  if (n < 0 || n > 20) throw ValidationError("hypercube: n must lie in [0, 20]");
  const int count = 1 << n;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * count / 2);
  for (int s = 0; s < count; ++s)
    for (int j = 0; j < n; ++j)
      if (!(s & (1 << j))) edges.push_back({s, s | (1 << j)});
  return Graph(count, edges);
}

Graph krawtchouk_chain(int n) {
  require_positive(n, "krawtchouk_chain");
  std::vector<Edge> edges;
  for (int k = 0; k < n; ++k)
    edges.push_back({k, k + 1, cplx(std::sqrt(static_cast<double>((k + 1) * (n - k))), 0.0)});
  return Graph(n + 1, edges);
}

Graph oriented_clique3() {
  const cplx minus_i{0.0, -1.0};
  const Edge edges[] = {{0, 1, minus_i}, {1, 2, minus_i}, {2, 0, minus_i}};
  return Graph(3, edges);
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<Edge> edges;
  append_shifted(edges, g, 0);
  append_shifted(edges, h, g.size());
  return Graph(g.size() + h.size(), edges);
}

Graph join(const Graph& g, const Graph& h) {
  std::vector<Edge> edges;
  append_shifted(edges, g, 0);
  append_shifted(edges, h, g.size());
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < h.size(); ++b) edges.push_back({a, g.size() + b});
  return Graph(g.size() + h.size(), edges);
}

Graph cone(const Graph& g) { return join(complete(1), g); }

Graph mcone(int m, const Graph& g) { return join(empty_graph(m), g); }

Graph cartesian(const Graph& g, const Graph& h) {
  const int nh = h.size();
  std::vector<Edge> edges;
  for (int a = 0; a < g.size(); ++a)
    for (const auto& e : h.edges()) edges.push_back({a * nh + e.u, a * nh + e.v, e.weight});
  for (const auto& e : g.edges())
    for (int b = 0; b < nh; ++b) edges.push_back({e.u * nh + b, e.v * nh + b, e.weight});
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(g.size()) * nh);
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < nh; ++b) labels.push_back(g.label(a) + "," + h.label(b));
  return Graph(g.size() * nh, edges, std::move(labels));
}

Graph one_sum(const Graph& g, int u, const Graph& h, int v) {
  check_root(g, u, "one_sum");
  check_root(h, v, "one_sum");
  std::vector<int> id(h.size());
  int next = g.size();
  for (int w = 0; w < h.size(); ++w) id[w] = (w == v) ? u : next++;
  std::vector<Edge> edges = g.edges();
  for (const auto& e : h.edges()) edges.push_back({id[e.u], id[e.v], e.weight});
  return Graph(next, edges);
}

Graph series_graph(std::span<const Graph> parts) {
  if (parts.empty()) throw ValidationError("series_graph: needs at least one part");
  std::vector<Edge> edges;
  std::vector<int> offsets;
  int total = 0;
  for (const auto& part : parts) {
    offsets.push_back(total);
    append_shifted(edges, part, total);
    total += part.size();
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    for (int a = 0; a < parts[i].size(); ++a)
      for (int b = 0; b < parts[i + 1].size(); ++b)
        edges.push_back({offsets[i] + a, offsets[i + 1] + b});
  return Graph(total, edges);
}

std::vector<std::vector<int>> rooted_product_vertex_map(const Graph& base,
                                                        std::span<const RootedPiece> pieces) {
  if (static_cast<int>(pieces.size()) != base.size())
    throw ValidationError("rooted_product: " + std::to_string(pieces.size()) + " pieces for " +
                          std::to_string(base.size()) + " base vertices");
  std::vector<std::vector<int>> map(pieces.size());
  int next = base.size();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto* piece = std::get_if<FinitePiece>(&pieces[i]);
    if (!piece) continue;
    check_root(piece->graph, piece->root, "rooted_product root");
    map[i].resize(piece->graph.size());
    for (int w = 0; w < piece->graph.size(); ++w)
      map[i][w] = (w == piece->root) ? static_cast<int>(i) : next++;
  }
  return map;
}

TailedGraph rooted_product(const Graph& base, std::span<const RootedPiece> pieces) {
  const auto map = rooted_product_vertex_map(base, pieces);
  int total = base.size();
  std::vector<Edge> edges = base.edges();
  std::vector<Tail> tails;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (std::holds_alternative<TailMarker>(pieces[i])) {
      tails.push_back({static_cast<int>(i), 1.0});
      continue;
    }
    const auto& piece = std::get<FinitePiece>(pieces[i]);
    total += piece.graph.size() - 1;
    for (const auto& e : piece.graph.edges())
      edges.push_back({map[i][e.u], map[i][e.v], e.weight});
  }
  return TailedGraph(Graph(total, edges), std::move(tails));
}

TailedGraph attach_tail(const Graph& g, int v, double weight) {
  return TailedGraph(g, {Tail{v, weight}});
}

TailedGraph attach_tail(const TailedGraph& t, int v, double weight) {
  auto tails = t.tails();
  tails.push_back({v, weight});
  return TailedGraph(t.base(), std::move(tails));
}

Graph with_edges(const Graph& g, std::span<const Edge> extra) {
  Graph::EntryMap merged = g.entries();
  for (const auto& e : extra) {
    if (e.u == e.v) throw ValidationError("with_edges: loop at vertex " + std::to_string(e.u));
    check_root(g, e.u, "with_edges");
    check_root(g, e.v, "with_edges");
    const auto key = e.u < e.v ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
    merged[key] += e.u < e.v ? e.weight : std::conj(e.weight);
  }
  std::vector<Edge> edges;
  for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
  return Graph(g.size(), edges, g.labels());
}

Graph with_labels(const Graph& g, std::vector<std::string> labels) {
  return Graph(g.size(), g.edges(), std::move(labels));
}

}  // namespace tailqw
