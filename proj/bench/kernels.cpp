// Serial reference against OpenMP kernel for each parallel pair.

#include "primpairs/bounds/bounds.hpp"
#include "primpairs/characters/characters.hpp"
#include "primpairs/verify/verify.hpp"

#include <benchmark/benchmark.h>

using namespace primpairs;

namespace {

const std::vector<bounds::CascadeEntry> kCascade = {{12, 12, 99}, {16, 16, 32}, {29, 34, 6}};

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds::scan_serial(kCascade, {}));
}
void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds::scan_parallel(kCascade, {}));
}

const verify::FieldTables& tables_3_7() {
  static const verify::FieldTables t(ff::FieldCtx::build(3, 1, 7));
  return t;
}

ff::RationalFunction x2_plus_1(const ff::FieldCtx& ctx) {
  return {ctx.one(), {ctx.one(), ctx.zero(), ctx.one()}, {ctx.one()}};
}

void BM_CountTableSerial(benchmark::State& state) {
  const auto& t = tables_3_7();
  const auto f = x2_plus_1(t.ctx());
  for (auto _ : state) benchmark::DoNotOptimize(verify::count_table(t, f));
}
void BM_CountTableParallel(benchmark::State& state) {
  const auto& t = tables_3_7();
  const auto f = x2_plus_1(t.ctx());
  for (auto _ : state) benchmark::DoNotOptimize(verify::count_table_parallel(t, f));
}

const verify::FieldTables& tables_2_6() {
  static const verify::FieldTables t(ff::FieldCtx::build(2, 1, 6));
  return t;
}

void BM_WitnessSearchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify::witness_search_serial(tables_2_6(), 1, 1, 10'000'000, 0, 1));
}
void BM_WitnessSearchParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify::witness_search_parallel(tables_2_6(), 1, 1, 10'000'000, 0, 1));
}

const characters::CharacterTables& chars_81() {
  static const characters::CharacterTables c(ff::FieldCtx::build(3, 1, 4));
  return c;
}

void BM_CharacterCountSerial(benchmark::State& state) {
  const auto& ch = chars_81();
  const auto f = x2_plus_1(ch.ctx());
  for (auto _ : state) benchmark::DoNotOptimize(ch.count_via_characters(f, 1, 2, 80, 80));
}
void BM_CharacterCountParallel(benchmark::State& state) {
  const auto& ch = chars_81();
  const auto f = x2_plus_1(ch.ctx());
  for (auto _ : state) benchmark::DoNotOptimize(ch.count_via_characters_parallel(f, 1, 2, 80, 80));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountTableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountTableParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessSearchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharacterCountSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharacterCountParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
