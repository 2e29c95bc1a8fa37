#include <benchmark/benchmark.h>

#include <random>

#include "lad/binarizer.hpp"
#include "lad/cascade.hpp"
#include "lad/dataset.hpp"
#include "lad/pattern.hpp"

namespace {

using namespace lad;

const char* const kCodes[] = {"G", "U", "E", "IV", "PA", "RE", "SD", "TD"};

// Class = worst of three driver bands; the other codes are noise.
Dataset make_dataset(std::size_t n, std::uint64_t seed) {
  const auto scale = RatingScale::fitch();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::uniform_real_distribution<double> noise(0, 100);
  std::bernoulli_distribution lift(0.25);
  std::vector<CountryRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    const int band = 1 + static_cast<int>(i % 16);
    CountryRecord r;
    r.country = "C" + std::to_string(i);
    r.year = 2020;
    r.rating = scale.label(band);
    for (int d = 0; d < 3; ++d) {
      const int b = d == static_cast<int>(i % 3) || band == 1 || !lift(rng) ? band : band - 1;
      r.values[kCodes[d]] = 10.0 * (16 - b) + 10.0 * unit(rng);
    }
    for (int d = 3; d < 8; ++d) r.values[kCodes[d]] = noise(rng);
    records.push_back(std::move(r));
  }
  return Dataset(scale, records);
}

struct Stage {
  std::vector<LabeledRecord> labeled;
  std::vector<CutPoint> candidates;
};

Stage middle_stage(const Dataset& d) {
  Stage s;
  for (const auto& r : d.records()) s.labeled.push_back({&r, *d.scale().rank(*r.rating) <= 8});
  for (const char* code : kCodes) {
    auto c = candidate_cutpoints(s.labeled, code);
    s.candidates.insert(s.candidates.end(), c.begin(), c.end());
  }
  return s;
}

void BM_CandidateCutpoints(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 1);
  const auto s = middle_stage(d);
  for (auto _ : state) {
    for (const char* code : kCodes) benchmark::DoNotOptimize(candidate_cutpoints(s.labeled, code));
  }
}
BENCHMARK(BM_CandidateCutpoints)->Arg(60)->Arg(120)->Arg(240);

void BM_MinimizeCutpoints(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 2);
  const auto s = middle_stage(d);
  const auto strategy = state.range(1) ? CoverStrategy::Exact : CoverStrategy::Greedy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_cutpoints(s.candidates, s.labeled, {strategy, 2000}));
  }
}
BENCHMARK(BM_MinimizeCutpoints)->Args({60, 0})->Args({120, 0})->Args({30, 1})->Args({60, 1});

void BM_EnumeratePatterns(benchmark::State& state) {
  const auto d = make_dataset(120, 3);
  const auto s = middle_stage(d);
  const auto view = binarize(s.labeled, minimize_cutpoints(s.candidates, s.labeled));
  MiningConfig config;
  config.max_degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_patterns(view, config, 0.0));
}
BENCHMARK(BM_EnumeratePatterns)->DenseRange(1, 3);

void BM_TrainCascade(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(train_cascade(d, TrainOptions{}, 2020));
}
BENCHMARK(BM_TrainCascade)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto d = make_dataset(128, 5);
  const auto model = train_cascade(d, TrainOptions{}, 2020);
  for (auto _ : state) {
    for (const auto& r : d.records()) benchmark::DoNotOptimize(classify(model, r));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(d.size()));
}
BENCHMARK(BM_Classify);

}  // namespace

BENCHMARK_MAIN();
