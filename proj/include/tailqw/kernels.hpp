#pragma once

// Numerical kernels with an OpenMP implementation and a serial reference
// implementation. The reference versions are kept for tests and benchmarks.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tailqw::kernels {

struct JacobiOptions {
  double relative_tolerance = 1e-13;
  int max_sweeps = 60;
};

template <class Scalar>
struct JacobiOutput {
  Eigen::VectorXd diagonal;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  int sweeps = 0;
  double off_norm = 0.0;
  bool converged = false;
};

// Cyclic-by-row ordering, one rotation at a time.
template <class Scalar>
JacobiOutput<Scalar> jacobi_cyclic(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
                                   const JacobiOptions& options = {});

// Round-robin (tournament) ordering: each round applies floor(n/2) disjoint
// rotations, computed from the same matrix and applied in parallel.
// Output is independent of the thread count.
template <class Scalar>
JacobiOutput<Scalar> jacobi_round_robin(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
                                        const JacobiOptions& options = {});

// out[j] = sum_k weights[k] * exp(-i * eigenvalues[k] * times[j])
std::vector<std::complex<double>> spectral_sum(std::span<const double> eigenvalues,
                                               std::span<const std::complex<double>> weights,
                                               std::span<const double> times);
std::vector<std::complex<double>> spectral_sum_serial(std::span<const double> eigenvalues,
                                                      std::span<const std::complex<double>> weights,
                                                      std::span<const double> times);

}  // namespace tailqw::kernels
