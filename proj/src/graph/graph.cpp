#include "tailqw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailqw/errors.hpp"

namespace tailqw {

namespace {

void check_vertex(int n, int v, const char* what) {
  if (v < 0 || v >= n)
    throw ValidationError(std::string(what) + ": vertex " + std::to_string(v) +
                          " out of range [0, " + std::to_string(n) + ")");
}

bool is_small_integer(double x) {
  return std::floor(x) == x && std::abs(x) < 2147483648.0;
}

}  // namespace

Graph::Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels)
    : n_(n), adjacency_lists_(n > 0 ? n : 0), labels_(std::move(labels)) {
  if (n < 0) throw ValidationError("graph: negative vertex count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw ValidationError("graph: " + std::to_string(labels_.size()) + " labels for " +
                          std::to_string(n) + " vertices");
  for (const auto& e : edges) {
    check_vertex(n, e.u, "edge");
    check_vertex(n, e.v, "edge");
    if (e.u == e.v) throw ValidationError("edge: loop at vertex " + std::to_string(e.u));
    if (e.weight == cplx(0.0, 0.0)) continue;
    const auto key = e.u < e.v ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
    const cplx w = e.u < e.v ? e.weight : std::conj(e.weight);
    if (!entries_.emplace(key, w).second)
      throw ValidationError("edge: repeated pair (" + std::to_string(key.first) + ", " +
                            std::to_string(key.second) + ")");
  }
  for (const auto& [key, w] : entries_) {
    adjacency_lists_[key.first].push_back(key.second);
    adjacency_lists_[key.second].push_back(key.first);
  }
  for (auto& list : adjacency_lists_) std::sort(list.begin(), list.end());
}

std::string Graph::label(int v) const {
  check_vertex(n_, v, "label");
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

cplx Graph::weight(int u, int v) const {
  check_vertex(n_, u, "weight");
  check_vertex(n_, v, "weight");
  if (u == v) return {0.0, 0.0};
  if (u < v) {
    auto it = entries_.find({u, v});
    return it == entries_.end() ? cplx{0.0, 0.0} : it->second;
  }
  auto it = entries_.find({v, u});
  return it == entries_.end() ? cplx{0.0, 0.0} : std::conj(it->second);
}

const std::vector<int>& Graph::neighbors(int u) const {
  check_vertex(n_, u, "neighbors");
  return adjacency_lists_[u];
}

cplx Graph::weighted_degree(int u) const {
  cplx sum{0.0, 0.0};
  for (int w : neighbors(u)) sum += weight(u, w);
  return sum;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(entries_.size());
  for (const auto& [key, w] : entries_) out.push_back({key.first, key.second, w});
  return out;
}

CMatrix Graph::adjacency() const {
  CMatrix a = CMatrix::Zero(n_, n_);
  for (const auto& [key, w] : entries_) {
    a(key.first, key.second) = w;
    a(key.second, key.first) = std::conj(w);
  }
  return a;
}

bool Graph::is_real() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& kv) { return kv.second.imag() == 0.0; });
}

bool Graph::is_unweighted() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& kv) { return kv.second == cplx(1.0, 0.0); });
}

bool Graph::has_gaussian_integer_weights() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) {
    return is_small_integer(kv.second.real()) && is_small_integer(kv.second.imag());
  });
}

TailedGraph::TailedGraph(Graph base, std::vector<Tail> tails)
    : base_(std::move(base)), tails_(std::move(tails)) {
  for (std::size_t i = 0; i < tails_.size(); ++i) {
    check_vertex(base_.size(), tails_[i].vertex, "tail");
    if (!(tails_[i].weight > 0.0) || !std::isfinite(tails_[i].weight))
      throw ValidationError("tail at vertex " + std::to_string(tails_[i].vertex) +
                            ": coupling weight must be positive and finite");
    for (std::size_t j = 0; j < i; ++j)
      if (tails_[j].vertex == tails_[i].vertex)
        throw ValidationError("tail: vertex " + std::to_string(tails_[i].vertex) +
                              " already carries a tail");
  }
}

bool TailedGraph::has_tail_at(int v) const {
  return std::any_of(tails_.begin(), tails_.end(), [v](const Tail& t) { return t.vertex == v; });
}

HermitianMatrix truncate(const TailedGraph& t, int tail_length) {
  if (tail_length < 1) throw ValidationError("truncate: tail length must be at least 1");
  const int n = t.finite_size();
  const int dim = n + tail_length * static_cast<int>(t.tails().size());
  CMatrix a = CMatrix::Zero(dim, dim);
  a.topLeftCorner(n, n) = t.base().adjacency();
  for (int i = 0; i < static_cast<int>(t.tails().size()); ++i) {
    const auto& tail = t.tails()[i];
    const int first = tail_site(t, i, 0, tail_length);
    a(tail.vertex, first) = tail.weight;
    a(first, tail.vertex) = tail.weight;
    for (int s = 0; s + 1 < tail_length; ++s) {
      a(first + s, first + s + 1) = 1.0;
      a(first + s + 1, first + s) = 1.0;
    }
  }
  return HermitianMatrix(std::move(a));
}

}  // namespace tailqw
