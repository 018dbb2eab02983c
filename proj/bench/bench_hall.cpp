#include <benchmark/benchmark.h>

#include "qh/braid.hpp"
#include "qh/hallfq.hpp"

using namespace qh;

namespace {

struct A3 {
  AdmissibleSequence s{DynkinData::make('A', 3), {1, 0, 1}};
  QuiverData qd{s};
};

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_hall_number(benchmark::State& st) {
  A3 a;
  HallContext hc(a.qd, 6);
  auto M = a.qd.classes_of_dim({1, 1, 1}).front();
  auto L = a.qd.add(M, M);
  const int q = static_cast<int>(st.range(1));
  hc.catalog(q);
  for (auto _ : st) benchmark::DoNotOptimize(hc.hall_number(M, M, L, q, exec_of(st)));
}

void BM_ext_count(benchmark::State& st) {
  A3 a;
  HallContext hc(a.qd, 6);
  auto M = a.qd.classes_of_dim({1, 1, 1}).front();
  auto N = a.qd.classes_of_dim({0, 1, 1}).front();
  auto L = a.qd.add(M, N);
  hc.catalog(3);
  for (auto _ : st) benchmark::DoNotOptimize(hc.ext_count(N, M, L, 3, exec_of(st)));
}

void BM_braid_suite(benchmark::State& st) {
  AdmissibleSequence s(DynkinData::make('A', 2), {0, 1});
  QuiverData qd(s);
  SDHAlgebra A(qd);
  for (auto _ : st) benchmark::DoNotOptimize(check_braid(A, -1, 1, exec_of(st)));
}

}  // namespace

// first arg: 0 serial, 1 OpenMP
BENCHMARK(BM_hall_number)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ext_count)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_braid_suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
