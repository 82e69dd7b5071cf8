#include <random>

#include <benchmark/benchmark.h>

#include <optmeas/kernels.hpp>
#include <optmeas/measures.hpp>
#include <optmeas/point_set.hpp>
#include <optmeas/poly_basis.hpp>

namespace {

using namespace optmeas;

cmatrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  cmatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex(g(gen), g(gen));
  }
  return m;
}

struct sweep_case {
  cmatrix evals;
  cmatrix coeffs;
  std::vector<double> phi;
  std::vector<double> out;
};

sweep_case make_sweep_case(index_t points, int degree) {
  const graded_basis basis(1, degree);
  sweep_case c;
  c.evals = basis.vandermonde(point_set::interval(-1.0, 1.0, points));
  c.coeffs = random_matrix(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()), 7)
                 .triangularView<Eigen::Upper>();
  c.phi.assign(points, 0.0);
  c.out.assign(points, 0.0);
  return c;
}

void bm_christoffel_parallel(benchmark::State& state) {
  auto c = make_sweep_case(static_cast<index_t>(state.range(0)), 20);
  for (auto _ : state) {
    kernels::christoffel_sweep(c.evals, c.coeffs, c.phi, 20, c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void bm_christoffel_serial(benchmark::State& state) {
  auto c = make_sweep_case(static_cast<index_t>(state.range(0)), 20);
  for (auto _ : state) {
    kernels::serial::christoffel_sweep(c.evals, c.coeffs, c.phi, 20, c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void bm_subset_parallel(benchmark::State& state) {
  const cmatrix rows = random_matrix(state.range(0), 4, 11);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::max_det_subset(rows, 4));
}

void bm_subset_serial(benchmark::State& state) {
  const cmatrix rows = random_matrix(state.range(0), 4, 11);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::max_det_subset(rows, 4));
}

void bm_lagrange_parallel(benchmark::State& state) {
  const cmatrix mesh = random_matrix(state.range(0), 21, 3);
  const cmatrix coeffs = random_matrix(21, 21, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::lagrange_sweep(mesh, coeffs));
}

void bm_lagrange_serial(benchmark::State& state) {
  const cmatrix mesh = random_matrix(state.range(0), 21, 3);
  const cmatrix coeffs = random_matrix(21, 21, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::lagrange_sweep(mesh, coeffs));
}

}  // namespace

BENCHMARK(bm_christoffel_serial)->Arg(2001)->Arg(20001)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_christoffel_parallel)->Arg(2001)->Arg(20001)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(bm_subset_serial)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_subset_parallel)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_lagrange_serial)->Arg(2001)->Arg(20001)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_lagrange_parallel)->Arg(2001)->Arg(20001)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
