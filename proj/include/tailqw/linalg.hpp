#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tailqw {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-13;

/// Dense complex Hermitian matrix. Construction validates Hermiticity to
/// kHermitianTolerance relative to the Frobenius norm and then symmetrizes
/// the stored entries exactly.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m);
  static HermitianMatrix from_real(const RMatrix& m);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double frobenius_norm() const { return m_.norm(); }
  // True when every imaginary part is exactly zero.
  bool is_real() const;

private:
  CMatrix m_;
};

// max |M_ij - conj(M_ji)|
double hermiticity_defect(const CMatrix& m);

struct EigDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic-Jacobi eigendecomposition, OpenMP round-robin sweeps. Real input
/// takes a real-arithmetic path. Eigenvalues ascend; ties keep the lower
/// original column first and each degenerate cluster is re-orthonormalized
/// in index order. Throws NumericalError after 60 sweeps without reaching
/// off(M) < 1e-13 ||M||_F.
EigDecomposition hermitian_eig(const HermitianMatrix& m);

/// Same contract, computed with the serial cyclic-by-row reference kernel.
EigDecomposition hermitian_eig_serial(const HermitianMatrix& m);

/// exp(-i t M) v through the eigenbasis.
CVector expm_apply(const EigDecomposition& eig, double t, const CVector& v);
CVector expm_apply(const HermitianMatrix& m, double t, const CVector& v);

/// Precomputed amplitude <target, exp(-i t M) source> as a sum over the
/// spectrum: sum_k weight_k exp(-i lambda_k t).
class SpectralOverlap {
public:
  SpectralOverlap(const EigDecomposition& eig, const CVector& source, const CVector& target);

  cplx amplitude(double t) const;
  std::vector<cplx> amplitudes(std::span<const double> times) const;
  std::vector<cplx> amplitudes_serial(std::span<const double> times) const;

  const RVector& eigenvalues() const noexcept { return values_; }
  const CVector& source_coefficients() const noexcept { return source_coeffs_; }
  const CVector& target_coefficients() const noexcept { return target_coeffs_; }
  const std::vector<cplx>& weights() const noexcept { return weights_; }

private:
  RVector values_;
  CVector source_coeffs_;  // V^dagger source
  CVector target_coeffs_;  // V^dagger target
  std::vector<cplx> weights_;
};

}  // namespace tailqw
