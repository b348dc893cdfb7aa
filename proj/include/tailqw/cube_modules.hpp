#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "tailqw/linalg.hpp"

namespace tailqw {

using IntSparse = Eigen::SparseMatrix<std::int64_t>;

/// Integer operator on the subset lattice of {1..n}; basis vector e(S) has
/// index sum_{j in S} 2^(j-1), matching hypercube(n).
struct LatticeOperator {
  int n = 0;
  IntSparse matrix;

  CMatrix dense() const;
};

// (L)_{A,B} = 1 iff |A| = |B| + 1 and B is a subset of A.
LatticeOperator lowering(int n);
// Transpose of lowering(n).
LatticeOperator raising(int n);
// R L - L R, diagonal with entry n - 2|S|.
LatticeOperator h_op(int n);

/// Normalized alpha(S) = sum_{j in S} zeta^j on the k-subsets, zeta = e^{2 pi i / n}.
/// The first nonzero amplitude is made positive real. Requires 1 <= k <= n-1.
CVector zeta_state(int n, int k);

struct WalkModule {
  CMatrix basis;           // orthonormal columns, chain order
  int chain_length = 0;
  bool is_primary = false; // contains the basis vector with index 0
  int highest_weight = 0;  // H-eigenvalue of the first chain vector
};

/// Splits the cube into chains z, Lz, L^2 z, ... generated by the vectors
/// of ker(R) in each H-eigenspace, highest eigenvalue first. Requires n <= 12.
std::vector<WalkModule> decompose_cube(int n);

/// Same procedure for A(K) (x) I + I (x) A(K), K = krawtchouk_chain(n), with
/// the tensor-sum lowering operator. Vertex (a, b) has index a (n+1) + b.
/// Requires 1 <= n <= 10.
std::vector<WalkModule> clebsch_gordan_square(int n);

/// Every module of decompose_cube(n) except the one through the empty set,
/// which is where a tail on vertex 0 attaches. Requires n >= 2.
std::vector<WalkModule> dark_modules_of_tailed_cube(int n);

// basis^dagger A basis
CMatrix module_block(const WalkModule& m, const CMatrix& a);
// ||(I - P) A P||_F with P the projector onto the module
double invariance_residual(const WalkModule& m, const CMatrix& a);
// Off-block Frobenius norm of A conjugated by the concatenated module bases.
double block_residual(const std::vector<WalkModule>& modules, const CMatrix& a);

}  // namespace tailqw
