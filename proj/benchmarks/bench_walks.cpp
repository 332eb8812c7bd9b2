// Copyright 2026 The qcwalk Authors.
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
#include <benchmark/benchmark.h>

#include "qcw/classical_walks.hpp"
#include "qcw/hybrid_walk.hpp"
#include "qcw/lindblad.hpp"

namespace {

const qcw::Graph& paper_graph() {
  static const qcw::Graph g = [] {
    qcw::ClusteredErSpec spec;
    spec.seed = 1;
    return qcw::generate_clustered_er(spec).graph;
  }();
  return g;
}

void BM_HybridTrajectory(benchmark::State& state) {
  const qcw::Graph& g = paper_graph();
  qcw::HqcwParams params;
  params.alpha = static_cast<double>(state.range(0)) / 10.0;
  const auto scheme = state.range(1) == 0 ? qcw::NoJumpScheme::exact : qcw::NoJumpScheme::first_order;
  const qcw::HybridWalker walker(g, params.alpha, params.resolved_dt(g), scheme);
  qcw::Rng rng(7);
  qcw::NodeId start = 0;
  for (auto _ : state) {
    auto t = walker.run(start, params.walk_length, params.resolved_t_max(), rng);
    benchmark::DoNotOptimize(t.nodes.data());
    start = (start + 1) % static_cast<qcw::NodeId>(g.node_count());
  }
}
BENCHMARK(BM_HybridTrajectory)->ArgsProduct({{3, 8, 10}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_PropagatorSetup(benchmark::State& state) {
  const qcw::Graph& g = paper_graph();
  for (auto _ : state) {
    qcw::NoJumpPropagator prop(g, 0.8, 0.01);
    benchmark::DoNotOptimize(prop.matrix().data());
  }
}
BENCHMARK(BM_PropagatorSetup)->Unit(benchmark::kMillisecond);

void BM_FirstOrderCorpus(benchmark::State& state) {
  qcw::FirstOrderParams params;
  for (auto _ : state) benchmark::DoNotOptimize(qcw::generate_corpus(paper_graph(), params).walks.data());
}
BENCHMARK(BM_FirstOrderCorpus)->Unit(benchmark::kMicrosecond);

void BM_SecondOrderCorpus(benchmark::State& state) {
  qcw::SecondOrderParams params;
  for (auto _ : state) benchmark::DoNotOptimize(qcw::generate_corpus(paper_graph(), params).walks.data());
}
BENCHMARK(BM_SecondOrderCorpus)->Unit(benchmark::kMicrosecond);

void BM_LindbladIntegrate(benchmark::State& state) {
  const std::vector<qcw::Edge> e{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
  const qcw::Graph g(6, e);
  const auto rho0 = qcw::pure_density(qcw::QuantumState::localized(6, 0));
  for (auto _ : state) {
    auto rho = qcw::integrate(rho0, g, 0.8, 1.0, qcw::default_oracle_timestep(g));
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_LindbladIntegrate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
