#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tailqw/graph.hpp"
#include "tailqw/linalg.hpp"

namespace tailqw {

/// Ordered list of disjoint, nonempty vertex cells covering 0..n-1.
class Partition {
public:
  Partition(int n, std::vector<std::vector<int>> cells);

  int vertex_count() const noexcept { return n_; }
  const std::vector<std::vector<int>>& cells() const noexcept { return cells_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  int cell_of(int v) const { return cell_of_.at(v); }
  std::vector<int> cell_sizes() const;

private:
  int n_;
  std::vector<std::vector<int>> cells_;
  std::vector<int> cell_of_;
};

struct EquitabilityWitness {
  int vertex;  // vertex whose weight into `cell` differs from its cell-mates
  int cell;
};

struct EquitabilityResult {
  bool equitable = false;
  std::optional<EquitabilityWitness> witness;
  explicit operator bool() const noexcept { return equitable; }
};

struct QuotientMatrix {
  CMatrix matrix;  // Hermitian, real symmetric for real graphs
  std::vector<int> cell_sizes;
};

struct WalkMatrixReport {
  int rank = 0;
  int dark_dimension = 0;
  bool exact = false;
};

/// Cells ordered by BFS distance from v; cell 0 is {v}. Throws
/// ValidationError listing unreachable vertices.
Partition distance_partition(const Graph& g, int v);

/// Every vertex of cell j has the same total weight (real and imaginary part)
/// into every cell k. Comparisons are exact for Gaussian-integer weights and
/// within 1e-12 relative otherwise.
EquitabilityResult is_equitable(const Graph& g, const Partition& p);

/// Q^dagger A Q for the normalized characteristic matrix Q. Entry (j, k) is
/// d_jk * sqrt(|V_j| / |V_k|) with d_jk the weight from one vertex of V_j into
/// V_k. Throws NotEquitable.
QuotientMatrix quotient(const Graph& g, const Partition& p);

/// Columns e_v, A e_v, ..., A^(n-1) e_v.
CMatrix walk_matrix(const Graph& g, int v);

/// Rank of the walk matrix: exact fraction-free elimination over the Gaussian
/// integers when every weight is one, else singular values below
/// 1e-9 * sigma_max (after column normalization) count as zero.
WalkMatrixReport controllability(const Graph& g, int v);

/// Exact rank of a Gaussian-integer matrix via Bareiss elimination.
int exact_rank(const CMatrix& m);
/// Numerical rank with the relative singular-value threshold.
int numerical_rank(const CMatrix& m, double relative_threshold = 1e-9);

/// G(n, 1/2): pair (u, v), u < v in lexicographic order, is an edge iff the
/// top bit of the next std::mt19937_64 output is set.
Graph random_graph(int n, std::uint64_t seed);

}  // namespace tailqw
