#include <benchmark/benchmark.h>

#include "onion/onion.hpp"

namespace {

using namespace onion;

const FloatTensor& float222() {
  static const FloatTensor t = random_state({2, 2, 2}, 11);
  return t;
}

const FloatTensor& float2222() {
  static const FloatTensor t = random_state({2, 2, 2, 2}, 11);
  return t;
}

ExactTensor small_integers(const Format& format, long seed) {
  std::vector<Exact> amps(format_volume(format));
  long v = seed;
  for (auto& a : amps) {
    v = (v * 1103515245 + 12345) % 2147483648L;
    a = GaussianRational(mpq_class(v % 7 - 3), mpq_class((v / 7) % 5 - 2));
  }
  return ExactTensor(format, std::move(amps));
}

void BM_det3_exact(benchmark::State& state) {
  const ExactTensor t = small_integers({2, 2, 2}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(det3_explicit(t));
}
BENCHMARK(BM_det3_exact);

void BM_det3_float(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(det3_explicit(float222()));
}
BENCHMARK(BM_det3_float);

void BM_det4_exact(benchmark::State& state) {
  const ExactTensor t = small_integers({2, 2, 2, 2}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(det4(t));
}
BENCHMARK(BM_det4_exact)->Unit(benchmark::kMillisecond);

void BM_det4_float(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(det4(float2222()));
}
BENCHMARK(BM_det4_float)->Unit(benchmark::kMicrosecond);

void BM_classify_222_exact(benchmark::State& state) {
  const ExactTensor t = small_integers({2, 2, 2}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(classify(t));
}
BENCHMARK(BM_classify_222_exact);

void BM_classify_322_float(benchmark::State& state) {
  const FloatTensor t = random_state({3, 2, 2}, 13);
  for (auto _ : state) benchmark::DoNotOptimize(classify(t));
}
BENCHMARK(BM_classify_322_float);

void BM_canonicalize_exact(benchmark::State& state) {
  const ExactTensor t = small_integers({2, 2, 2}, 9);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize_3qubit(t));
}
BENCHMARK(BM_canonicalize_exact)->Unit(benchmark::kMicrosecond);

void BM_oracle_ghz(benchmark::State& state) {
  const FloatTensor t = tensor_cast<Float>(kets<Exact>({2, 2, 2}, {"000", "111"}));
  OracleOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degenerate_oracle(t, opts));
}
BENCHMARK(BM_oracle_ghz)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
