#include <benchmark/benchmark.h>

#include "mumall/compute.hpp"
#include "mumall/stdlib.hpp"

using namespace mumall;

static void BM_PlusSearch(benchmark::State& state) {
  BodyPtr plus = std_body("plus");
  long n = state.range(0);
  for (auto _ : state) {
    SearchResult r = search(plus, {numeral(n), numeral(n)}, SearchStrategy{});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PlusSearch)->Arg(8)->Arg(32)->Arg(128);

static void BM_MultSearch(benchmark::State& state) {
  BodyPtr mult = std_body("mult");
  long n = state.range(0);
  for (auto _ : state) {
    SearchResult r = search(mult, {numeral(n), numeral(n)}, SearchStrategy{});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MultSearch)->Arg(4)->Arg(8)->Arg(16);

static void BM_AckSearch(benchmark::State& state) {
  BodyPtr ack = std_body("ack");
  for (auto _ : state) {
    SearchResult r = search(ack, {numeral(2), numeral(state.range(0))},
                            SearchStrategy{});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_AckSearch)->Arg(2)->Arg(4)->Arg(6);

static void BM_CertifyPlus(benchmark::State& state) {
  BodyPtr plus = std_body("plus");
  long n = state.range(0);
  for (auto _ : state) {
    ProofNodePtr p = certify(plus, {numeral(n), numeral(n)}, numeral(2 * n));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_CertifyPlus)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
