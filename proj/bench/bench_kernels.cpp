// Copyright 2025 The lcusim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels vs the OpenMP production kernels.

#include <benchmark/benchmark.h>

#include "lcu/pauli.hpp"
#include "lcu/rng.hpp"
#include "lcu/sim.hpp"

namespace {

lcu::PauliSum random_sum(int n_qubits, std::size_t n_terms, std::uint64_t seed) {
  lcu::Xoshiro256 rng(seed);
  lcu::PauliSum s(n_qubits);
  const std::uint64_t mask = (n_qubits == 64) ? ~0ull : (1ull << n_qubits) - 1;
  for (std::size_t i = 0; i < n_terms; ++i) {
    s.accumulate(rng.next_u64() & mask, rng.next_u64() & mask,
                 lcu::Complex(rng.next_double() - 0.5, rng.next_double() - 0.5));
  }
  s.canonicalize();
  return s;
}

lcu::Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed) {
  lcu::Xoshiro256 rng(seed);
  lcu::Circuit c(n_qubits);
  for (int i = 0; i < n_gates; ++i) {
    const int q = static_cast<int>(rng.next_u64() % n_qubits);
    switch (rng.next_u64() % 4) {
      case 0: c.add(lcu::Gate::h(q)); break;
      case 1: c.add(lcu::Gate::rz(q, rng.next_double() * 6.28)); break;
      case 2: c.add(lcu::Gate::ry(q, rng.next_double() * 6.28)); break;
      default: {
        int t = static_cast<int>(rng.next_u64() % n_qubits);
        if (t == q) t = (t + 1) % n_qubits;
        c.add(lcu::Gate::cx(q, t));
      }
    }
  }
  return c;
}

void BM_PauliProductSerial(benchmark::State& state) {
  const auto a = random_sum(20, static_cast<std::size_t>(state.range(0)), 11);
  const auto b = random_sum(20, static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcu::reference::sum_multiply(a, b));
  }
}

void BM_PauliProductParallel(benchmark::State& state) {
  const auto a = random_sum(20, static_cast<std::size_t>(state.range(0)), 11);
  const auto b = random_sum(20, static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcu::sum_multiply(a, b));
  }
}

void BM_StateVectorSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = random_circuit(n, 60, 5);
  const auto psi = lcu::StateVector::zero_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcu::reference::run(c, psi));
  }
}

void BM_StateVectorParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = random_circuit(n, 60, 5);
  const auto psi = lcu::StateVector::zero_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcu::run(c, psi));
  }
}

}  // namespace

BENCHMARK(BM_PauliProductSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PauliProductParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StateVectorSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StateVectorParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
