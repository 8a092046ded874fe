#include <benchmark/benchmark.h>

#include "qclab/linalg.hpp"
#include "qclab/quantum_state.hpp"
#include "qclab/sampling.hpp"

using namespace qclab;

namespace {

void BM_Kron(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(1);
  ComplexMatrix a = random_unitary(rng, n);
  ComplexMatrix b = random_unitary(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(8)->Arg(16);

void BM_HermitianEig(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(2);
  ComplexMatrix rho = random_density(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(rho));
}
BENCHMARK(BM_HermitianEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ApplyGate(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  Rng rng(3);
  RegisterLayout layout({{"a", qubits - 2, Party::alice}, {"b", 2, Party::bob}});
  PureState psi(layout, random_state_vector(rng, std::size_t(1) << qubits));
  ComplexMatrix u = random_unitary(rng, 4);
  for (auto _ : state) benchmark::DoNotOptimize(apply_gate(psi, u, {"b"}));
}
BENCHMARK(BM_ApplyGate)->Arg(8)->Arg(10)->Arg(12);

void BM_ReducedDensity(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  Rng rng(4);
  RegisterLayout layout({{"a", 2, Party::alice}, {"b", qubits - 2, Party::bob}});
  PureState psi(layout, random_state_vector(rng, std::size_t(1) << qubits));
  for (auto _ : state) benchmark::DoNotOptimize(reduced_density(psi, {"a"}));
}
BENCHMARK(BM_ReducedDensity)->Arg(8)->Arg(10)->Arg(12);

void BM_MaxOverlap(benchmark::State& state) {
  Rng rng(5);
  RegisterLayout lh({{"h", 2, Party::alice}});
  PureState phi1 = purify(DensityMatrix(lh, random_density(rng, 4)), "k");
  PureState phi2 = purify(DensityMatrix(lh, random_density(rng, 4)), "k");
  for (auto _ : state) benchmark::DoNotOptimize(max_overlap_local_unitary(phi1, phi2, {"k"}));
}
BENCHMARK(BM_MaxOverlap);

}  // namespace
