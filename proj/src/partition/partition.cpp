#include "tailqw/partition.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <string>

#include "tailqw/errors.hpp"

namespace tailqw {

namespace detail {
int exact_walk_rank(const Graph& g, int v);
}

Partition::Partition(int n, std::vector<std::vector<int>> cells)
    : n_(n), cells_(std::move(cells)), cell_of_(n, -1) {
  for (std::size_t j = 0; j < cells_.size(); ++j) {
    if (cells_[j].empty()) throw ValidationError("partition: cell " + std::to_string(j) + " is empty");
    for (int v : cells_[j]) {
      if (v < 0 || v >= n)
        throw ValidationError("partition: vertex " + std::to_string(v) + " out of range");
      if (cell_of_[v] != -1)
        throw ValidationError("partition: vertex " + std::to_string(v) + " appears in cells " +
                              std::to_string(cell_of_[v]) + " and " + std::to_string(j));
      cell_of_[v] = static_cast<int>(j);
    }
  }
  for (int v = 0; v < n; ++v)
    if (cell_of_[v] == -1)
      throw ValidationError("partition: vertex " + std::to_string(v) + " is not covered");
}

std::vector<int> Partition::cell_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(cells_.size());
  for (const auto& c : cells_) sizes.push_back(static_cast<int>(c.size()));
  return sizes;
}

Partition distance_partition(const Graph& g, int v) {
  if (v < 0 || v >= g.size())
    throw ValidationError("distance_partition: vertex " + std::to_string(v) + " out of range");
  std::vector<int> dist(g.size(), -1);
  std::queue<int> frontier;
  dist[v] = 0;
  frontier.push(v);
  int depth = 0;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int w : g.neighbors(u)) {
      if (dist[w] != -1) continue;
      dist[w] = dist[u] + 1;
      depth = std::max(depth, dist[w]);
      frontier.push(w);
    }
  }
  std::string unreachable;
  for (int u = 0; u < g.size(); ++u)
    if (dist[u] == -1) unreachable += (unreachable.empty() ? "" : ", ") + std::to_string(u);
  if (!unreachable.empty())
    throw ValidationError("distance_partition: vertices unreachable from " + std::to_string(v) +
                          ": " + unreachable);
  std::vector<std::vector<int>> cells(depth + 1);
  for (int u = 0; u < g.size(); ++u) cells[dist[u]].push_back(u);
  return Partition(g.size(), std::move(cells));
}

namespace {

std::vector<cplx> weights_into_cells(const Graph& g, const Partition& p, int u) {
  std::vector<cplx> out(p.cell_count(), cplx{0.0, 0.0});
  for (int w : g.neighbors(u)) out[p.cell_of(w)] += g.weight(u, w);
  return out;
}

bool close(double a, double b, bool exact) {
  if (exact) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

EquitabilityResult is_equitable(const Graph& g, const Partition& p) {
  if (p.vertex_count() != g.size())
    throw ValidationError("is_equitable: partition covers " + std::to_string(p.vertex_count()) +
                          " vertices, graph has " + std::to_string(g.size()));
  const bool exact = g.has_gaussian_integer_weights();
  for (const auto& cell : p.cells()) {
    const auto reference = weights_into_cells(g, p, cell.front());
    for (std::size_t i = 1; i < cell.size(); ++i) {
      const auto sums = weights_into_cells(g, p, cell[i]);
      for (std::size_t k = 0; k < sums.size(); ++k) {
        if (!close(sums[k].real(), reference[k].real(), exact) ||
            !close(sums[k].imag(), reference[k].imag(), exact))
          return {false, EquitabilityWitness{cell[i], static_cast<int>(k)}};
      }
    }
  }
  return {true, std::nullopt};
}

QuotientMatrix quotient(const Graph& g, const Partition& p) {
  const auto check = is_equitable(g, p);
  if (!check)
    throw NotEquitable("quotient: partition is not equitable (vertex " +
                           std::to_string(check.witness->vertex) + " into cell " +
                           std::to_string(check.witness->cell) + ")",
                       check.witness->vertex, check.witness->cell);
  const int m = static_cast<int>(p.cell_count());
  QuotientMatrix q;
  q.cell_sizes = p.cell_sizes();
  q.matrix = CMatrix::Zero(m, m);
  for (const auto& [key, w] : g.entries()) {
    const int j = p.cell_of(key.first);
    const int k = p.cell_of(key.second);
    q.matrix(j, k) += w;
    q.matrix(k, j) += std::conj(w);
  }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      q.matrix(j, k) /= std::sqrt(static_cast<double>(q.cell_sizes[j]) * q.cell_sizes[k]);
  return q;
}

CMatrix walk_matrix(const Graph& g, int v) {
  if (v < 0 || v >= g.size())
    throw ValidationError("walk_matrix: vertex " + std::to_string(v) + " out of range");
  const int n = g.size();
  const CMatrix a = g.adjacency();
  CMatrix w(n, n);
  CVector col = CVector::Zero(n);
  col[v] = 1.0;
  for (int k = 0; k < n; ++k) {
    w.col(k) = col;
    col = a * col;
  }
  return w;
}

int numerical_rank(const CMatrix& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  CMatrix scaled = m;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double norm = scaled.col(j).norm();
    if (norm > 0.0) scaled.col(j) /= norm;
  }
  Eigen::JacobiSVD<CMatrix> svd(scaled);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] >= relative_threshold * sigma[0]) ++rank;
  return rank;
}

WalkMatrixReport controllability(const Graph& g, int v) {
  if (v < 0 || v >= g.size())
    throw ValidationError("controllability: vertex " + std::to_string(v) + " out of range");
  WalkMatrixReport report;
  report.exact = g.has_gaussian_integer_weights();
  report.rank = report.exact ? detail::exact_walk_rank(g, v) : numerical_rank(walk_matrix(g, v));
  report.dark_dimension = g.size() - report.rank;
  return report;
}

Graph random_graph(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_graph: n must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() >> 63) edges.push_back({u, v});
  return Graph(n, edges);
}

}  // namespace tailqw
