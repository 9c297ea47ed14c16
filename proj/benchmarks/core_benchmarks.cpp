#include <benchmark/benchmark.h>

#include <pseudolinear/awtc.hpp>
#include <pseudolinear/bch_parity.hpp>
#include <pseudolinear/independence_lab.hpp>
#include <pseudolinear/plcode.hpp>
#include <pseudolinear/rng.hpp>
#include <pseudolinear/tail_bounds.hpp>

#include <algorithm>
#include <memory>

using namespace pseudolinear;

namespace {

void BM_Encode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto code = sample_code(n, static_cast<unsigned>(std::min<std::size_t>(n / 2, 16)), 4, MessageMode::ZeroFree, 1);
  Message u = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(code.encode(u));
    u = u % (code.message_count() - 1) + 1;
  }
}
BENCHMARK(BM_Encode)->Arg(24)->Arg(48)->Arg(64);

void BM_Decode(benchmark::State& state) {
  const auto rn = static_cast<unsigned>(state.range(0));
  const Codebook book(sample_code(2 * rn, rn, 4, MessageMode::ZeroFree, 2));
  Rng rng(3);
  std::vector<BitVector> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(random_bits(rng, book.n()));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(book.decode(inputs[i++ % inputs.size()]));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(book.size()));
}
BENCHMARK(BM_Decode)->Arg(6)->Arg(10)->Arg(12);

void BM_DesignDistance(benchmark::State& state) {
  const ParityCheck pc(static_cast<unsigned>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_design_distance(pc));
}
BENCHMARK(BM_DesignDistance)->Args({4, 4})->Args({5, 4})->Args({6, 3})->Unit(benchmark::kMillisecond);

void BM_GreedyAttack(benchmark::State& state) {
  const auto rn = static_cast<unsigned>(state.range(0));
  const std::size_t n = 24;
  auto book = std::make_shared<const Codebook>(sample_code(n, rn, 4, MessageMode::ZeroFree, 4));
  const ChannelParams params(n, 0.125, 0.25);
  const MyopicGreedy greedy(book, params);
  Rng rng(5);
  const CoordinateSet z = random_subset(rng, n, params.read_size());
  const BitVector obs = observe(*book, book->message(0), z);
  for (auto _ : state) benchmark::DoNotOptimize(greedy.attack(z, obs, rng));
}
BENCHMARK(BM_GreedyAttack)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ForestEnumeration(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(partition_by_cycles(m, m, k));
}
BENCHMARK(BM_ForestEnumeration)->Args({3, 4})->Args({4, 4})->Args({4, 6})->Unit(benchmark::kMillisecond);

void BM_CkOracle(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ck_oracle(m, m, 4));
}
BENCHMARK(BM_CkOracle)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
