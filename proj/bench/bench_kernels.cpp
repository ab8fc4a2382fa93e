#include <benchmark/benchmark.h>

#include "vnspec/kernels.hpp"

using namespace vnspec;

namespace {

CMatrix random_matrix(SeededRng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_symmetric();
  return m;
}

std::vector<CMatrix> random_set(SeededRng& rng, int count, Eigen::Index n) {
  std::vector<CMatrix> out;
  for (int i = 0; i < count; ++i) out.push_back(random_matrix(rng, n, n));
  return out;
}

// Sizes follow the basic construction of the larger shipped systems: H of
// dimension 8..20, alg_bar bases of a few dozen elements.

template <auto Kernel>
void pairwise(benchmark::State& state) {
  SeededRng rng(1);
  const auto n = state.range(0);
  const auto set = random_set(rng, 32, n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(set, set));
}

template <auto Kernel>
void sandwich(benchmark::State& state) {
  SeededRng rng(2);
  const auto n = state.range(0);
  const auto set = random_set(rng, 32, n);
  const CMatrix mid = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(set, mid, set));
}

template <auto Kernel>
void commutator(benchmark::State& state) {
  SeededRng rng(3);
  const auto n = state.range(0);
  const CMatrix cols = random_matrix(rng, n * n, n * n), g = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(cols, g));
}

template <auto Kernel>
void coordinates(benchmark::State& state) {
  SeededRng rng(4);
  const auto n = state.range(0);
  const CMatrix basis = random_matrix(rng, n * n, 48);
  const auto elems = random_set(rng, 256, n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(basis, elems));
}

template <auto Kernel>
void pair_gram(benchmark::State& state) {
  SeededRng rng(5);
  const auto d = state.range(0);
  const CMatrix prod = random_matrix(rng, d * d, d * d);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(prod, d, d));
}

}  // namespace

BENCHMARK(pairwise<kernels::serial::pairwise_products>)->Name("pairwise_products/serial")->Arg(8)->Arg(20);
BENCHMARK(pairwise<kernels::parallel::pairwise_products>)->Name("pairwise_products/parallel")->Arg(8)->Arg(20);
BENCHMARK(sandwich<kernels::serial::sandwich_products>)->Name("sandwich_products/serial")->Arg(8)->Arg(20);
BENCHMARK(sandwich<kernels::parallel::sandwich_products>)->Name("sandwich_products/parallel")->Arg(8)->Arg(20);
BENCHMARK(commutator<kernels::serial::commutator_images>)->Name("commutator_images/serial")->Arg(6)->Arg(10);
BENCHMARK(commutator<kernels::parallel::commutator_images>)->Name("commutator_images/parallel")->Arg(6)->Arg(10);
BENCHMARK(coordinates<kernels::serial::coordinates>)->Name("coordinates/serial")->Arg(8)->Arg(20);
BENCHMARK(coordinates<kernels::parallel::coordinates>)->Name("coordinates/parallel")->Arg(8)->Arg(20);
BENCHMARK(pair_gram<kernels::serial::pair_gram>)->Name("pair_gram/serial")->Arg(12)->Arg(24);
BENCHMARK(pair_gram<kernels::parallel::pair_gram>)->Name("pair_gram/parallel")->Arg(12)->Arg(24);

BENCHMARK_MAIN();
