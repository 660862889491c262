// Serial reference vs OpenMP kernels on grid-shift workloads.

#include <benchmark/benchmark.h>

#include "isorep/kernels.hpp"
#include "isorep/linalg.hpp"

namespace {

using namespace isorep;

struct Fixture2 {
  ComplexMatrix ops[4];
  kernels::Shift2 shift;
  ComplexVector x;

  Fixture2(int cells, int fiber) {
    for (int k = 0; k < 4; ++k) ops[k] = random_unitary(fiber, 11 + k);
    shift.cells = cells;
    shift.offset_x = cells / 3;
    shift.offset_y = cells / 2;
    shift.op = {{{&ops[0], &ops[1]}, {&ops[2], &ops[3]}}};
    x = random_gaussian(static_cast<Eigen::Index>(cells) * cells * fiber, 1, 7).col(0);
  }
};

template <auto Fn>
void bm_kron(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_gaussian(n, n, 1);
  const ComplexMatrix b = random_gaussian(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b));
}

template <auto Fn>
void bm_shift_matrix_2d(benchmark::State& state) {
  const Fixture2 f(static_cast<int>(state.range(0)), 16);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.shift));
}

template <auto Fn>
void bm_apply_shift_2d(benchmark::State& state) {
  const Fixture2 f(static_cast<int>(state.range(0)), 32);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.shift, f.x));
}

template <auto Fn>
void bm_intertwining_residual(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_unitary(n, 3);
  const ComplexMatrix t = random_gaussian(n, n, 4);
  const ComplexMatrix b = random_unitary(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, t, b));
}

}  // namespace

BENCHMARK(bm_kron<kernels::serial::kron>)->Name("kron/serial")->Arg(16)->Arg(32);
BENCHMARK(bm_kron<kernels::parallel::kron>)->Name("kron/parallel")->Arg(16)->Arg(32);
BENCHMARK(bm_shift_matrix_2d<kernels::serial::shift_matrix_2d>)->Name("shift_matrix_2d/serial")->Arg(4)->Arg(8);
BENCHMARK(bm_shift_matrix_2d<kernels::parallel::shift_matrix_2d>)->Name("shift_matrix_2d/parallel")->Arg(4)->Arg(8);
BENCHMARK(bm_apply_shift_2d<kernels::serial::apply_shift_2d>)->Name("apply_shift_2d/serial")->Arg(8)->Arg(16);
BENCHMARK(bm_apply_shift_2d<kernels::parallel::apply_shift_2d>)->Name("apply_shift_2d/parallel")->Arg(8)->Arg(16);
BENCHMARK(bm_intertwining_residual<kernels::serial::intertwining_residual>)
    ->Name("intertwining_residual/serial")
    ->Arg(128)
    ->Arg(256);
BENCHMARK(bm_intertwining_residual<kernels::parallel::intertwining_residual>)
    ->Name("intertwining_residual/parallel")
    ->Arg(128)
    ->Arg(256);

BENCHMARK_MAIN();
