#include <benchmark/benchmark.h>

#include "qclab/generators.hpp"
#include "qclab/round_elim.hpp"

using namespace qclab;

namespace {

void BM_EvalClassical(benchmark::State& state) {
  Rng rng(10);
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocolOptions opt;
  opt.rounds = state.range(0);
  opt.coin_values = 3;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto d = JointDistribution::uniform(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(eval_classical(p, g, &d));
}
BENCHMARK(BM_EvalClassical)->Arg(1)->Arg(2)->Arg(3);

void BM_EvalQuantum(benchmark::State& state) {
  Rng rng(11);
  GameSpec g = GameSpec::equality(1);
  QuantumProtocolOptions opt;
  opt.rounds = 2;
  opt.safe_qubits = static_cast<int>(state.range(0));
  QuantumSafeProtocol p = random_quantum_protocol(rng, opt);
  for (auto _ : state) benchmark::DoNotOptimize(eval_quantum(p, g));
}
BENCHMARK(BM_EvalQuantum)->Arg(0)->Arg(1);

void BM_ClassicalRoundReduce(benchmark::State& state) {
  Rng rng(12);
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  opt.coin_values = 3;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto d = random_joint_distribution(rng, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(classical_round_reduce(p, g, d));
}
BENCHMARK(BM_ClassicalRoundReduce);

void BM_QuantumRoundReduce(benchmark::State& state) {
  Rng rng(13);
  GameSpec g = GameSpec::equality(1);
  QuantumProtocolOptions opt;
  opt.rounds = 2;
  opt.safe_qubits = 1;
  QuantumSafeProtocol p = random_quantum_protocol(rng, opt);
  auto d = random_joint_distribution(rng, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_round_reduce(p, g, d));
}
BENCHMARK(BM_QuantumRoundReduce);

}  // namespace

BENCHMARK_MAIN();
