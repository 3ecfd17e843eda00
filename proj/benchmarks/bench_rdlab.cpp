#include <benchmark/benchmark.h>

#include "rdlab/harness.hpp"

using namespace rdlab;

namespace {

ActionPtr make_action(const std::string& group, const std::string& action) {
  return std::make_shared<const GroupAction>(GroupAction::parse(Group::parse(group), action));
}

CPElement random_on_sphere(const ActionPtr& action, const SphereIndex& index, int k, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "bench");
  CPElement x(action);
  for (const auto& g : index.sphere(k)) x.set(g, sample_coefficient(rng, CoeffSampler::kGaussian, action->dim(), 1.0));
  return x;
}

void BM_Enumerate(benchmark::State& state, const std::string& group) {
  const Group g = Group::parse(group);
  const int R = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SphereIndex::enumerate(g, R).ball_size(R));
  state.counters["ball"] = static_cast<double>(SphereIndex::enumerate(g, R).ball_size(R));
}
BENCHMARK_CAPTURE(BM_Enumerate, free2, std::string("free:2"))->DenseRange(4, 10, 2);
BENCHMARK_CAPTURE(BM_Enumerate, zd3, std::string("zd:3"))->DenseRange(4, 16, 4);
BENCHMARK_CAPTURE(BM_Enumerate, fpc23, std::string("fpc:2,3"))->DenseRange(8, 20, 4);

void BM_Product(benchmark::State& state) {
  const auto action = make_action("free:2", "perm:2:g1=(0 1)");
  const auto index = SphereIndex::enumerate(action->group(), 4);
  const int k = static_cast<int>(state.range(0));
  const CPElement x = random_on_sphere(action, index, k, 1);
  const CPElement y = random_on_sphere(action, index, k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(product(x, y).support_size());
  state.counters["terms"] = static_cast<double>(x.support_size() * y.support_size());
}
BENCHMARK(BM_Product)->DenseRange(1, 4);

void BM_Compress(benchmark::State& state) {
  const auto action = make_action("free:2", "perm:2:g1=(0 1)");
  const int R = static_cast<int>(state.range(0));
  const auto index = SphereIndex::enumerate(action->group(), R);
  const CPElement x = random_on_sphere(action, index, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(compress(x, index, R).matrix.nonZeros());
  state.counters["rows"] = static_cast<double>(index.ball_size(R) * 2);
}
BENCHMARK(BM_Compress)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_NormLower(benchmark::State& state) {
  const auto action = make_action("free:2", "trivial:1");
  const int R = static_cast<int>(state.range(0));
  const auto index = SphereIndex::enumerate(action->group(), R);
  const CPElement x = random_on_sphere(action, index, 1, 4);
  double value = 0.0;
  for (auto _ : state) {
    value = norm_lower(x, index, R).value;
    benchmark::DoNotOptimize(value);
  }
  state.counters["norm"] = value;
}
BENCHMARK(BM_NormLower)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_NormExactSmall(benchmark::State& state) {
  const auto action = make_action("zd:2", "trivial:2");
  const int R = static_cast<int>(state.range(0));
  const auto index = SphereIndex::enumerate(action->group(), R);
  const CPElement x = random_on_sphere(action, index, 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(norm_exact_small(x, index, R).value);
}
BENCHMARK(BM_NormExactSmall)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
