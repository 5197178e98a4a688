#include <benchmark/benchmark.h>

#include "qfbc/attacks.hpp"
#include "qfbc/experiments.hpp"

using namespace qfbc;

static void BM_Encrypt(benchmark::State& state) {
  const auto v = static_cast<Variant>(state.range(0));
  Rng rng(1);
  const CipherParams p{v, 16, 8, 42};
  const auto keys = random_key_schedule(p, rng);
  State4 s = random_state(16, rng);
  for (auto _ : state) {
    s = encrypt(p, keys, s);
    benchmark::DoNotOptimize(s);
  }
  state.SetLabel(std::string(to_string(v)));
}
BENCHMARK(BM_Encrypt)->Arg(0)->Arg(1)->Arg(2);

static void BM_SimonFindPeriod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const Word s = 1 + rng.bits(n - 1);
  FunctionTable t(std::size_t{1} << n);
  for (Word x = 0; x < t.size(); ++x) t[x] = static_cast<Word>(mix64(std::min(x, x ^ s)) & width_mask(n));
  for (auto _ : state) benchmark::DoNotOptimize(simon_find_period(t, n, {}, rng));
}
BENCHMARK(BM_SimonFindPeriod)->Arg(8)->Arg(12);

static void BM_GroverStatevector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grover_search_statevector([](Word x) { return x == 5; }, n, rng));
  }
}
BENCHMARK(BM_GroverStatevector)->Arg(10)->Arg(14);

static void BM_Distinguisher(benchmark::State& state) {
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_distinguisher_trial(Structure::FbcFK6, 8, false, {}, 1, t++));
}
BENCHMARK(BM_Distinguisher);

static void BM_AttackTrial(benchmark::State& state) {
  const auto target = static_cast<AttackTarget>(state.range(0));
  AttackSettings s;
  s.n = target == AttackTarget::Q2Fbckf ? 4 : 8;
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_attack_trial(target, s, 1, t++));
  state.SetLabel(std::string(to_string(target)));
}
BENCHMARK(BM_AttackTrial)
    ->Arg(static_cast<int>(AttackTarget::Q1FeistelKf3r))
    ->Arg(static_cast<int>(AttackTarget::Q1Fbckf4r))
    ->Arg(static_cast<int>(AttackTarget::Q1Fbcfk5r))
    ->Arg(static_cast<int>(AttackTarget::Q2Fbckf))
    ->Arg(static_cast<int>(AttackTarget::GmsFx))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
