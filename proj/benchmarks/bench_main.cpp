// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <filesystem>
#include <numbers>

#include "qmaexp/instance_io.hpp"
#include "qmaexp/rtm.hpp"
#include "qmaexp/simulator.hpp"
#include "qmaexp/spectral.hpp"

namespace {

using namespace qmaexp;

void BM_ExpmTaylor(benchmark::State& state) {
  const auto m = ata_oracle(path_adjacency_oracle(static_cast<std::uint64_t>(state.range(0))));
  const double t = std::numbers::pi / 4;
  for (auto _ : state) benchmark::DoNotOptimize(expm_taylor(m, t, 30));
}
BENCHMARK(BM_ExpmTaylor)->Arg(16)->Arg(64)->Arg(128);

void BM_MinEigenvalue(benchmark::State& state) {
  const auto block = structured_matrix(BlockKind::Path, static_cast<std::uint64_t>(state.range(0)));
  const DenseMatrix a{block.matrix.cast<double>(), true, false};
  for (auto _ : state) benchmark::DoNotOptimize(min_eigenvalue(a));
}
BENCHMARK(BM_MinEigenvalue)->Arg(64)->Arg(256)->Arg(512);

void BM_TridiagonalPath(benchmark::State& state) {
  const auto t = path_tridiagonal(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonal_eigenvalues(t));
}
BENCHMARK(BM_TridiagonalPath)->Arg(256)->Arg(2048);

void BM_RunCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  QuantumCircuit c(n);
  for (int layer = 0; layer < 20; ++layer) {
    for (int q = 0; q < n; ++q) c.h(q).t(q);
    for (int q = 0; q + 1 < n; ++q) c.cnot(q, q + 1);
  }
  const Statevector zero(n);
  for (auto _ : state) benchmark::DoNotOptimize(run_circuit(c, zero));
}
BENCHMARK(BM_RunCircuit)->Arg(8)->Arg(14)->Arg(18);

void BM_ReduceToGapped(benchmark::State& state) {
  const auto m = load_machine(std::filesystem::path(QMAEXP_CORPUS_DIR) / "machines" / "unary_counter.json",
                              static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto g = reduce_to_gapped(m, "11");
    benchmark::DoNotOptimize(collect_rows(g.matrix));
  }
}
BENCHMARK(BM_ReduceToGapped)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
