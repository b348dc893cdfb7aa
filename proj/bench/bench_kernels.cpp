// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "tailqw/kernels.hpp"

namespace {

using CMat = Eigen::MatrixXcd;

CMat random_hermitian(int n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  CMat m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = normal(rng);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = {normal(rng), normal(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

void BM_JacobiCyclic(benchmark::State& state) {
  const CMat m = random_hermitian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tailqw::kernels::jacobi_cyclic<std::complex<double>>(m));
}

void BM_JacobiRoundRobin(benchmark::State& state) {
  const CMat m = random_hermitian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tailqw::kernels::jacobi_round_robin<std::complex<double>>(m));
}

struct SumInput {
  std::vector<double> eigenvalues, times;
  std::vector<std::complex<double>> weights;
};

SumInput sum_input(int spectrum, int points) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  SumInput in;
  for (int k = 0; k < spectrum; ++k) {
    in.eigenvalues.push_back(u(rng));
    in.weights.emplace_back(u(rng), u(rng));
  }
  for (int j = 0; j < points; ++j) in.times.push_back(0.01 * j);
  return in;
}

void BM_SpectralSumSerial(benchmark::State& state) {
  const auto in = sum_input(static_cast<int>(state.range(0)), 3001);
  for (auto _ : state)
    benchmark::DoNotOptimize(tailqw::kernels::spectral_sum_serial(in.eigenvalues, in.weights, in.times));
}

void BM_SpectralSum(benchmark::State& state) {
  const auto in = sum_input(static_cast<int>(state.range(0)), 3001);
  for (auto _ : state) benchmark::DoNotOptimize(tailqw::kernels::spectral_sum(in.eigenvalues, in.weights, in.times));
}

}  // namespace

BENCHMARK(BM_JacobiCyclic)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiRoundRobin)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralSumSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralSum)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
