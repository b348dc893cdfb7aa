#include "tailqw/kernels.hpp"

#include <cmath>
#include <complex>

namespace tailqw::kernels {
namespace {

std::complex<double> sum_at(std::span<const double> eigenvalues,
                            std::span<const std::complex<double>> weights, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double phase = -eigenvalues[k] * t;
    acc += weights[k] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace

std::vector<std::complex<double>> spectral_sum(std::span<const double> eigenvalues,
                                               std::span<const std::complex<double>> weights,
                                               std::span<const double> times) {
  std::vector<std::complex<double>> out(times.size());
  const auto count = static_cast<long>(times.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < count; ++j) out[j] = sum_at(eigenvalues, weights, times[j]);
  return out;
}

std::vector<std::complex<double>> spectral_sum_serial(std::span<const double> eigenvalues,
                                                      std::span<const std::complex<double>> weights,
                                                      std::span<const double> times) {
  std::vector<std::complex<double>> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) out[j] = sum_at(eigenvalues, weights, times[j]);
  return out;
}

}  // namespace tailqw::kernels
