#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "infectio/infectio.hpp"

using namespace infectio;

namespace {

Formula chain(int n, bool conj) {
  Formula f = Formula::var("v0");
  for (int i = 1; i < n; ++i) {
    const Formula v = Formula::var("v" + std::to_string(i));
    f = conj ? (f & ~v) : (f | v);
  }
  return f;
}

void BM_Entails(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<Formula> gamma = {chain(n, true)};
  const std::vector<Formula> delta = {chain(n, false)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(entails(LogicId::Sfde, gamma, delta).holds);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Entails)->DenseRange(2, 8, 2);

// A NegNegI/NegNegE tower of height n over p & q, each level a detour.
Proof tower(int n) {
  Proof p = Proof::rule(RuleId::AndI, {Proof::assume(Formula::var("p")), Proof::assume(Formula::var("q"))});
  for (int i = 0; i < n; ++i) p = Proof::rule(RuleId::NegNegE, {Proof::rule(RuleId::NegNegI, {p})});
  return p;
}

// Nested OrEp detours: each level introduces p | q by OrI3p and eliminates it.
Proof nested_detours(int n) {
  const Formula p = Formula::var("p");
  const Formula q = Formula::var("q");
  Proof inner = Proof::rule(RuleId::AndI, {Proof::assume(p), Proof::assume(q)});
  for (int i = 0; i < n; ++i) {
    const std::string a = "a" + std::to_string(i);
    const std::string b = "b" + std::to_string(i);
    const Proof major = Proof::rule(RuleId::OrI3p, {Proof::assume(p), Proof::assume(q)});
    const Proof branch = Proof::rule(RuleId::AndE1, {Proof::rule(RuleId::AndI, {inner, Proof::assume(q)})});
    inner = Proof::rule(RuleId::OrEp,
                        {major, Proof::rule(RuleId::AndI, {Proof::assume(p, a), Proof::assume(q)}),
                         Proof::rule(RuleId::AndI, {Proof::assume(p), Proof::assume(q, b)}), branch},
                        {{}, {a}, {b}});
  }
  return inner;
}

void BM_NormaliseTower(benchmark::State& state) {
  const Proof p = tower(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalise(SystemId::NDp_Sfde, p).trace.size());
}
BENCHMARK(BM_NormaliseTower)->RangeMultiplier(2)->Range(4, 64);

void BM_NormaliseNested(benchmark::State& state) {
  const Proof p = nested_detours(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalise(SystemId::NDp_Sfde, p).trace.size());
}
BENCHMARK(BM_NormaliseNested)->DenseRange(1, 6);

void BM_ProveFresh(benchmark::State& state) {
  const Formula p = Formula::var("p");
  const Formula q = Formula::var("q");
  const std::vector<Formula> gamma = {p | q, ~~(p & q)};
  const Formula goal = (q | p) & ~~q;
  for (auto _ : state) benchmark::DoNotOptimize(prove(SystemId::NDp_Sfde, gamma, goal).has_value());
}
BENCHMARK(BM_ProveFresh);

void BM_ProveSharedProver(benchmark::State& state) {
  const SystemId sys = static_cast<SystemId>(state.range(0));
  const Formula p = Formula::var("p");
  const Formula q = Formula::var("q");
  const std::vector<Formula> goals = {p | ~p, q | p, ~(p & ~q), ~~(q | p), (p | q) & (q | p)};
  const std::vector<Formula> gamma = {p | q};
  for (auto _ : state) {
    Prover prover(sys);
    for (const auto& g : goals) benchmark::DoNotOptimize(prover.prove(gamma, g).has_value());
  }
  state.SetLabel(std::string(to_string(sys)));
}
BENCHMARK(BM_ProveSharedProver)->DenseRange(0, 14);

}  // namespace
BENCHMARK_MAIN();
