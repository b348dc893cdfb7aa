#pragma once

#include <vector>

#include "tailqw/graph.hpp"
#include "tailqw/linalg.hpp"

namespace tailqw {

/// Leading part of an eventually-free Jacobi matrix. Beyond the prefix the
/// operator continues as the free path: diagonal 0, off-diagonal 1.
struct JacobiPrefix {
  std::vector<double> diagonal;      // length m
  std::vector<double> off_diagonal;  // length m-1, strictly positive
  double tail_coupling = 1.0;        // last prefix entry to first tail site
};

struct LanczosResult {
  CMatrix basis;  // n x m, orthonormal, column 0 = start
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
};

inline constexpr double kLanczosBreakdown = 1e-12;

/// Lanczos tridiagonalization with two-pass full reorthogonalization.
/// Stops at breakdown (residual <= 1e-12 * ||A||_F) or after n vectors.
LanczosResult lanczos(const HermitianMatrix& a, const CVector& start);

/// Protected (dark) block plus eventually-free Jacobi part of a graph with
/// one tail.
struct DecoupledForm {
  int attachment = 0;
  CMatrix krylov_basis;  // n x m, column 0 = e_attachment
  CMatrix dark_basis;    // n x (n-m)
  CMatrix dark_block;    // dark_basis^dagger A dark_basis
  // Krylov prefix in reversed order: the attachment vertex is the last
  // entry, adjacent to the tail.
  JacobiPrefix jacobi;

  int dark_dimension() const noexcept { return static_cast<int>(dark_basis.cols()); }
  int krylov_dimension() const noexcept { return static_cast<int>(krylov_basis.cols()); }
};

/// Requires exactly one tail; multi-tail inputs go through reduce_multitail.
DecoupledForm decouple(const TailedGraph& t);

struct MultitailReduction {
  TailedGraph graph;
  std::vector<int> vertex_map;  // original id -> reduced id
};

/// Collapses the tail attachment vertices into one vertex. The attachments
/// must form a coclique cell of an equitable partition (every other vertex
/// sees all of them with one common weight) and carry equal tail weights.
/// The merged vertex takes the slot of the smallest attachment and couples
/// to each remaining vertex u with sqrt(m) * A[t][u]; the single tail keeps
/// the common tail weight. Throws NotEquitable.
MultitailReduction reduce_multitail(const TailedGraph& t);

/// Conjugates the tail-truncated operator by the assembled basis
/// [dark | reversed Krylov | tail sites] and returns the Frobenius norm of
/// everything the form does not account for: the off-block part, entries of
/// the Jacobi block outside its band, mismatch against the recorded prefix
/// and mismatch against the recorded dark block.
double verify_decoupling(const TailedGraph& t, const DecoupledForm& form, int tail_length);

}  // namespace tailqw
