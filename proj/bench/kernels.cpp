// Serial reference vs parallel kernel on the same inputs. Run with
// --benchmark_filter to pick a kernel; OMP_NUM_THREADS bounds the OpenMP ones.

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <random>
#include <thread>

#include "argverify/baba/bruteforce.hpp"
#include "argverify/graph/argument_graph.hpp"
#include "argverify/pipeline/clients.hpp"
#include "argverify/pipeline/literals.hpp"
#include "argverify/pipeline/relations.hpp"
#include "argverify/solver/attack_matrix.hpp"
#include "argverify/verify/verification.hpp"
#include "frameworks.hpp"

using namespace argverify;

namespace {

baba::BipolarFramework framework(int n) {
  std::mt19937_64 rng(7);
  return testing::random_framework(rng, {n, n, 2});
}

graph::ArgumentGraph support_graph(std::size_t n) {
  std::mt19937_64 rng(11);
  graph::ArgumentGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node({pipeline::literal_id('a', i + 1), "", 0, graph::NodeKind::assumption});
  for (std::size_t e = 0; e < 3 * n; ++e) {
    const auto s = rng() % n, d = rng() % n;
    if (s == d) continue;
    g.add_edge({pipeline::literal_id('a', s + 1), pipeline::literal_id('a', d + 1), graph::Relation::support, 0.9});
  }
  return g;
}

// Mock verdicts behind a fixed per-request delay, standing in for a remote model.
class SlowClassifier final : public pipeline::ClassifierClient {
 public:
  nlohmann::json classify(const std::vector<pipeline::PairRequest>& batch) override {
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    return inner_.classify(batch);
  }

 private:
  pipeline::MockClassifier inner_;
};

void BM_BruteforceSerial(benchmark::State& state) {
  const auto f = framework(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(baba::enumerate_bruteforce_serial(f, baba::Semantics::stable, 20));
}

void BM_BruteforceParallel(benchmark::State& state) {
  const auto f = framework(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(baba::enumerate_bruteforce(f, baba::Semantics::stable, 20));
}

void BM_AttackMatrixSerial(benchmark::State& state) {
  const auto f = framework(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solver::build_attack_matrix_serial(f));
}

void BM_AttackMatrixParallel(benchmark::State& state) {
  const auto f = framework(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solver::build_attack_matrix(f));
}

void BM_SupportCountsSerial(benchmark::State& state) {
  const auto g = support_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify::transitive_support_counts_serial(g));
}

void BM_SupportCountsParallel(benchmark::State& state) {
  const auto g = support_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify::transitive_support_counts(g));
}

void BM_Classify(benchmark::State& state) {
  std::vector<pipeline::OrderedPair> pairs;
  pipeline::TextLookup texts;
  for (int i = 0; i < 64; ++i) {
    const auto a = pipeline::literal_id('a', 2 * i + 1), b = pipeline::literal_id('a', 2 * i + 2);
    texts[a] = "claim " + std::to_string(i);
    texts[b] = i % 2 ? "[+" + a + "] reason" : "[-" + a + "] rebuttal";
    pairs.push_back({b, a});
  }
  SlowClassifier client;
  pipeline::ClassifyOptions options;
  options.batch = 4;
  options.parallelism = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::classify_pairs(pairs, texts, client, options));
}

}  // namespace

BENCHMARK(BM_BruteforceSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteforceParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttackMatrixSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttackMatrixParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SupportCountsSerial)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SupportCountsParallel)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
