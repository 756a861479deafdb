// Copyright 2026 The qmiddle Authors
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

#include "qmiddle/builder.hpp"
#include "qmiddle/field.hpp"
#include "qmiddle/geometry.hpp"
#include "qmiddle/numeric.hpp"
#include "qmiddle/orbits.hpp"
#include "qmiddle/verifier.hpp"

using namespace qmiddle;

namespace {

FieldTable table_for(std::int64_t q, std::uint32_t n) {
  const auto pp = *prime_power(static_cast<std::uint64_t>(q));
  return FieldTable::build(pp.p, pp.m, n);
}

void BM_FieldTable(benchmark::State& state) {
  const auto pp = *prime_power(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(FieldTable::build(pp.p, pp.m, 5));
}
BENCHMARK(BM_FieldTable)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_SpanTriple(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  const Geometry geo(table);
  Residue c = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geo.span_triple(0, 1, c));
    c = c + 1 < table.s() ? c + 1 : 2;
  }
}
BENCHMARK(BM_SpanTriple)->Arg(2)->Arg(3)->Arg(5);

void BM_Canonicalize(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  const Geometry geo(table);
  const auto z = *geo.span_triple(0, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(geo, z));
}
BENCHMARK(BM_Canonicalize)->Arg(2)->Arg(3)->Arg(5);

void BM_ClassTable(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  const Geometry geo(table);
  for (auto _ : state) benchmark::DoNotOptimize(ClassTable(geo).class_count());
}
BENCHMARK(BM_ClassTable)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BuildK2(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  const Geometry geo(table);
  const ClassTable classes(geo);
  const CycleBuilder builder(classes);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(builder.build(seed++).vertices.size());
}
BENCHMARK(BM_BuildK2)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  const Geometry geo(table);
  const ClassTable classes(geo);
  const auto cert = CycleBuilder(classes).build(1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert).ok());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cert.vertices.size()));
}
BENCHMARK(BM_Verify)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EchelonRank(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  const Geometry geo(table);
  const EchelonOracle oracle(table);
  const auto z = *geo.span_triple(0, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(oracle.rank(z.points));
}
BENCHMARK(BM_EchelonRank)->Arg(2)->Arg(3)->Arg(5);

void BM_PropertySuite(benchmark::State& state) {
  const auto table = table_for(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(run_property_suite(table, default_suite_options(table.q())).ok());
}
BENCHMARK(BM_PropertySuite)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
