// Serial reference vs OpenMP versions of the hot kernels.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"
#include "rpd/matrices.hpp"

using rpd::kernels::RadialKernel;
namespace mx = rpd::matrices;

namespace {

rpd::geometry::PointConfig cloud(int n) { return rpd::geometry::random_config(3, n, 7, 20.0); }

mx::SymmetricMatrix random_symmetric(std::size_t n) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  mx::SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, u(rng));
  }
  return a;
}

std::vector<double> polygon_row(int m) {
  std::vector<double> row(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) row[j] = std::cos(45.5 * std::sin(std::numbers::pi * j / m));
  return row;
}

void BM_schoenberg_serial(benchmark::State& st) {
  const auto k = RadialKernel::omega(4);
  const auto x = cloud(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mx::schoenberg_matrix_serial(k, x));
}

void BM_schoenberg_omp(benchmark::State& st) {
  const auto k = RadialKernel::omega(4);
  const auto x = cloud(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mx::schoenberg_matrix(k, x));
}

void BM_jacobi_serial(benchmark::State& st) {
  const auto a = random_symmetric(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mx::sym_eigenvalues_serial(a));
}

void BM_jacobi_omp(benchmark::State& st) {
  const auto a = random_symmetric(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mx::sym_eigenvalues(a));
}

void BM_circulant_serial(benchmark::State& st) {
  const auto row = polygon_row(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mx::circulant_eigs_serial(row));
}

void BM_circulant_omp(benchmark::State& st) {
  const auto row = polygon_row(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mx::circulant_eigs(row));
}

}  // namespace

BENCHMARK(BM_schoenberg_serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_schoenberg_omp)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi_serial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi_omp)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_circulant_serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_circulant_omp)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
