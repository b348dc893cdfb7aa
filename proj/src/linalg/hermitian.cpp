#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailqw/errors.hpp"
#include "tailqw/kernels.hpp"
#include "tailqw/linalg.hpp"

namespace tailqw {

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

HermitianMatrix::HermitianMatrix(CMatrix m) {
  if (m.rows() != m.cols())
    throw ValidationError("Hermitian matrix must be square, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance * m.norm())
    throw ValidationError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  CMatrix sym = (m + m.adjoint()) * 0.5;
  m_ = std::move(sym);
}

HermitianMatrix HermitianMatrix::from_real(const RMatrix& m) {
  return HermitianMatrix(m.cast<cplx>());
}

bool HermitianMatrix::is_real() const {
  return (m_.imag().array() == 0.0).all();
}

namespace {

EigDecomposition canonicalize(const RVector& diag, const CMatrix& vectors, int sweeps) {
  const Eigen::Index n = diag.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return diag[a] < diag[b]; });

  EigDecomposition out;
  out.sweeps = sweeps;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    out.vectors.col(k) = vectors.col(order[k]);
  }

  const double scale = n == 0 ? 1.0 : std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double cluster_tol = 1e-10 * scale;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && out.values[end] - out.values[end - 1] <= cluster_tol) ++end;
    for (Eigen::Index k = start; k < end; ++k) {
      // two passes of classical Gram-Schmidt against earlier cluster members
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index j = start; j < k; ++j)
          out.vectors.col(k) -= out.vectors.col(j) * out.vectors.col(j).dot(out.vectors.col(k));
      out.vectors.col(k).normalize();
    }
    start = end;
  }
  return out;
}

template <bool Parallel>
EigDecomposition eig_impl(const HermitianMatrix& m) {
  if (m.dim() == 0) return {};
  kernels::JacobiOptions options;
  RVector diag;
  CMatrix vectors;
  int sweeps = 0;
  bool converged = false;
  double off = 0.0;
  if (m.is_real()) {
    RMatrix a = m.matrix().real();
    auto out = Parallel ? kernels::jacobi_round_robin<double>(std::move(a), options)
                        : kernels::jacobi_cyclic<double>(std::move(a), options);
    diag = std::move(out.diagonal);
    vectors = out.vectors.cast<cplx>();
    sweeps = out.sweeps;
    converged = out.converged;
    off = out.off_norm;
  } else {
    auto out = Parallel ? kernels::jacobi_round_robin<cplx>(m.matrix(), options)
                        : kernels::jacobi_cyclic<cplx>(m.matrix(), options);
    diag = std::move(out.diagonal);
    vectors = std::move(out.vectors);
    sweeps = out.sweeps;
    converged = out.converged;
    off = out.off_norm;
  }
  if (!converged)
    throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(sweeps) +
                         " sweeps (off-diagonal norm " + std::to_string(off) + ")");
  return canonicalize(diag, vectors, sweeps);
}

}  // namespace

EigDecomposition hermitian_eig(const HermitianMatrix& m) { return eig_impl<true>(m); }

EigDecomposition hermitian_eig_serial(const HermitianMatrix& m) { return eig_impl<false>(m); }

CVector expm_apply(const EigDecomposition& eig, double t, const CVector& v) {
  if (v.size() != eig.values.size())
    throw ValidationError("expm_apply: vector has dimension " + std::to_string(v.size()) +
                          ", operator has " + std::to_string(eig.values.size()));
  CVector coeffs = eig.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::polar(1.0, -eig.values[k] * t);
  return eig.vectors * coeffs;
}

CVector expm_apply(const HermitianMatrix& m, double t, const CVector& v) {
  if (v.size() != m.dim())
    throw ValidationError("expm_apply: vector has dimension " + std::to_string(v.size()) +
                          ", operator has " + std::to_string(m.dim()));
  return expm_apply(hermitian_eig(m), t, v);
}

SpectralOverlap::SpectralOverlap(const EigDecomposition& eig, const CVector& source,
                                 const CVector& target)
    : values_(eig.values) {
  if (source.size() != eig.values.size() || target.size() != eig.values.size())
    throw ValidationError("SpectralOverlap: state dimension does not match operator");
  source_coeffs_ = eig.vectors.adjoint() * source;
  target_coeffs_ = eig.vectors.adjoint() * target;
  weights_.resize(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k)
    weights_[k] = std::conj(target_coeffs_[k]) * source_coeffs_[k];
}

cplx SpectralOverlap::amplitude(double t) const {
  const double times[1] = {t};
  return kernels::spectral_sum_serial({values_.data(), static_cast<std::size_t>(values_.size())},
                                      weights_, times)[0];
}

std::vector<cplx> SpectralOverlap::amplitudes(std::span<const double> times) const {
  return kernels::spectral_sum({values_.data(), static_cast<std::size_t>(values_.size())}, weights_,
                               times);
}

std::vector<cplx> SpectralOverlap::amplitudes_serial(std::span<const double> times) const {
  return kernels::spectral_sum_serial({values_.data(), static_cast<std::size_t>(values_.size())},
                                      weights_, times);
}

}  // namespace tailqw
