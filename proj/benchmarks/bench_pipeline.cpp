#include <benchmark/benchmark.h>

#include "assess/metrics.hpp"
#include "assess/profile.hpp"
#include "assess/recommender.hpp"
#include "assess/trace.hpp"
#include "trace_gen.hpp"

using namespace assess;

namespace {

const std::string& worked_trace() {
  static const std::string text = gen::worked_example_trace();
  return text;
}

void BM_ParseTrace(benchmark::State& state) {
  const std::string& text = worked_trace();
  for (auto _ : state) benchmark::DoNotOptimize(parse_trace(std::string_view(text)));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTrace);

void BM_EstimateOrientation(benchmark::State& state) {
  std::vector<TimedImu> imu;
  for (int i = 0; i < state.range(0); ++i) imu.push_back({i * 10, {{0.1, 0.2, 9.8}, {0.01, 0.02, 0.03}}});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_orientation(imu));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateOrientation)->Arg(100)->Arg(10000);

void BM_BuildProfile(benchmark::State& state) {
  const AssessmentTrace trace = parse_trace(std::string_view(worked_trace()));
  const KnowledgeBase kb = builtin_kb();
  for (auto _ : state) benchmark::DoNotOptimize(build_profile(trace, kb));
}
BENCHMARK(BM_BuildProfile);

void BM_Recommend(benchmark::State& state) {
  const KnowledgeBase kb = builtin_kb();
  AbilityProfile profile;
  for (AbilityId id : kAllAbilities) profile.set_ease(id, EaseOfAction::easy, EntrySource::sensor);
  profile.set_ease(AbilityId::finger_bend, EaseOfAction::impossible, EntrySource::sensor);
  profile.set_ease(AbilityId::speak, EaseOfAction::difficult, EntrySource::sensor);
  for (auto _ : state) benchmark::DoNotOptimize(recommend(profile, kb));
}
BENCHMARK(BM_Recommend);

}  // namespace

// The distro's static benchmark_main is built with a different LTO version, so provide main here.
BENCHMARK_MAIN();
