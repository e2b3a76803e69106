#include "trqf/cyclotomic.hpp"
#include "trqf/fieldscan.hpp"

#include <benchmark/benchmark.h>

using namespace trqf;

namespace {

const std::string data_dir = TRQF_DATA_DIR;

void BM_MultiplyQuartic(benchmark::State& state) {
    FieldContext K = load_field_file(data_dir + "/fields/k51200.json");
    Element a = K.make({3, -1, 2, 5}), b = K.make({-7, 4, 1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MultiplyQuartic);

void BM_NormQuartic(benchmark::State& state) {
    FieldContext K = load_field_file(data_dir + "/fields/k51200.json");
    Element a = K.make({3, -1, 2, 5});
    for (auto _ : state) benchmark::DoNotOptimize(K.norm(a));
}
BENCHMARK(BM_NormQuartic);

void BM_TotallyPositive(benchmark::State& state) {
    FieldContext K = load_field_file(data_dir + "/fields/k2624.json");
    Element a = K.make({6, 1, -1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(K.totally_positive(a));
}
BENCHMARK(BM_TotallyPositive);

// omega^2 <= n over a quartic field
void BM_EnumerateDominated(benchmark::State& state) {
    FieldContext K = load_field_file(data_dir + "/fields/k1600.json");
    Element B = K.from_int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_dominated(B, DominanceMode::SquareDominated));
}
BENCHMARK(BM_EnumerateDominated)->Arg(3)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CaseAnalysisL1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(quartic_case_analysis(CaseMode::L1Extension));
}
BENCHMARK(BM_CaseAnalysisL1)->Unit(benchmark::kMillisecond);

void BM_AlphaBeta(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(alpha_beta_verify(state.range(0)));
}
BENCHMARK(BM_AlphaBeta)->Arg(9)->Arg(13)->Arg(28)->Unit(benchmark::kMillisecond);

void BM_ObstructionSearch51200(benchmark::State& state) {
    FieldContext K = load_field_file(data_dir + "/fields/k51200.json");
    for (auto _ : state) benchmark::DoNotOptimize(obstruction_search(K));
}
BENCHMARK(BM_ObstructionSearch51200)->Unit(benchmark::kMillisecond);

void BM_SmallConditionScan(benchmark::State& state) {
    FieldTable t = ingest_fields(data_dir + "/quartic_sqrt2_20000.jsonl");
    ScanOptions so;
    so.threads = 1;
    so.unit_filter = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(scan_small_condition(t, so));
}
BENCHMARK(BM_SmallConditionScan)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
