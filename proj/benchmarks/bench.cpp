#include <benchmark/benchmark.h>

#include "scfo/fixtures.hpp"
#include "scfo/search.hpp"

#include <random>
#include <vector>

namespace {

using namespace scfo;

void BM_canonical(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 1024; ++i)
    words.push_back(Word::from_packed(rng() & ((std::uint64_t{1} << m) - 1), m));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical(words[i++ & 1023]));
  }
}
BENCHMARK(BM_canonical)->Arg(8)->Arg(12)->Arg(32);

void BM_open_distribution(benchmark::State& state) {
  const Word w = Word::from_string("CCHCHHCHCHHC");
  for (auto _ : state) {
    benchmark::DoNotOptimize(open_distribution(w));
  }
}
BENCHMARK(BM_open_distribution);

void BM_derive_output_rule(benchmark::State& state) {
  const engine::Protocol p = fixtures::protocol2();
  const BooleanFunction f = fixtures::paper_f2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::derive_output_rule(p.tmpl, f));
  }
}
BENCHMARK(BM_derive_output_rule);

void BM_verify_fixture(benchmark::State& state) {
  const engine::Protocol p = fixtures::protocol1();
  const BooleanFunction f = fixtures::xor3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::verify(p, f));
  }
}
BENCHMARK(BM_verify_fixture);

void BM_search_parity3_committed(benchmark::State& state) {
  const BooleanFunction f = fixtures::xor3();
  search::SearchConfig cfg;
  cfg.cards = 8;
  cfg.deck = search::DeckMode::CommittedPair;
  cfg.max_pair_multiplicity = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search::search(f, cfg));
  }
}
BENCHMARK(BM_search_parity3_committed)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
