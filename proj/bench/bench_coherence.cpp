// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP pruning of the coherent simulation.

#include <benchmark/benchmark.h>

#include <random>

#include "cohmin/coherence.hpp"
#include "cohmin/fixtures.hpp"

namespace cohmin {
namespace {

// Random transducer with `n` states and out-degree 3 over in {a, c}, out {b}.
Transducer Random(int n, unsigned seed) {
  std::mt19937 rng(seed);
  const Signature sig{{"a", "c"}, {"b"}};
  const std::vector<Round> rounds = all_rounds(sig);
  TransducerSpec spec;
  spec.signature = sig;
  for (int i = 0; i < n; ++i) spec.states.push_back("s" + std::to_string(i));
  spec.initial = "s0";
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k)
      spec.transitions.push_back(
          {spec.states[i], rounds[rng() % rounds.size()],
           spec.states[rng() % n]});
  return validate(spec);
}

template <CoherenceRelation (*Simulate)(const Transducer &, const Transducer &)>
void BM_Simulation(benchmark::State &state) {
  const Transducer t = Random(static_cast<int>(state.range(0)), 7);
  const Transducer p = universal_protocol(t.signature(), all_rounds(t.signature()));
  for (auto _ : state) benchmark::DoNotOptimize(Simulate(t, p));
}

CoherenceRelation Serial(const Transducer &t, const Transducer &p) {
  return coherent_simulation_serial(t, p);
}

CoherenceRelation Parallel(const Transducer &t, const Transducer &p) {
  return coherent_simulation(t, p);
}

BENCHMARK(BM_Simulation<Serial>)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_Simulation<Parallel>)->RangeMultiplier(4)->Range(16, 1024);

void BM_Minimize(benchmark::State &state) {
  const Transducer t = Random(static_cast<int>(state.range(0)), 11);
  const Transducer p = universal_protocol(t.signature(), all_rounds(t.signature()));
  for (auto _ : state) benchmark::DoNotOptimize(coherent_minimize(t, p));
}
BENCHMARK(BM_Minimize)->Arg(64)->Arg(256);

}  // namespace
}  // namespace cohmin

BENCHMARK_MAIN();
