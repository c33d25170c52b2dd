// Copyright 2026 The dcqe Authors
//
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

#include <numbers>

#include <benchmark/benchmark.h>

#include "dcqe/analysis.hpp"
#include "dcqe/measurement.hpp"
#include "dcqe/montecarlo.hpp"
#include "dcqe/optics.hpp"
#include "dcqe/rng.hpp"

namespace {

using namespace dcqe;

void BM_FullEraserState(benchmark::State& state) {
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::full_eraser_state(theta));
    theta += 0.01;
  }
}
BENCHMARK(BM_FullEraserState);

void BM_StateProbabilities(benchmark::State& state) {
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::state_probabilities(theta, optics::Choice::kCircular));
    theta += 0.01;
  }
}
BENCHMARK(BM_StateProbabilities);

void BM_RunTrials(benchmark::State& state) {
  const auto ordering = static_cast<montecarlo::Ordering>(state.range(1));
  const montecarlo::RunConfig config(std::numbers::pi / 4, montecarlo::ChoicePolicy::kRandomPerTrial,
                                     ordering, static_cast<std::uint64_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(montecarlo::run_trials(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunTrials)
    ->ArgsProduct({{10'000, 1'000'000}, {0, 1, 2}})
    ->Unit(benchmark::kMillisecond);

void BM_OrderIndependence(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back(std::to_string(i));
  const Register a("A", labels);
  const Register b("B", labels);
  CounterStream stream(7, 0);
  auto gaussian = [&stream] { return stream.next_gaussian(); };
  const Ket psi = random_ket(Layout{a, b}, gaussian);
  std::vector<std::string> da;
  std::vector<std::string> db;
  for (std::size_t i = 0; i < dim; ++i) {
    da.push_back("A" + labels[i]);
    db.push_back("B" + labels[i]);
  }
  const auto ma = ProjectiveMeasurement::from_basis(random_basis(a, gaussian), da);
  const auto mb = ProjectiveMeasurement::from_basis(random_basis(b, gaussian), db);
  for (auto _ : state) benchmark::DoNotOptimize(order_independence_report(psi, ma, mb, 1e-12));
}
BENCHMARK(BM_OrderIndependence)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
