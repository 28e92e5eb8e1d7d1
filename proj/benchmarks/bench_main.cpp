#include <map>

#include <benchmark/benchmark.h>

#include "poq/bench.hpp"
#include "poq/evaluator.hpp"
#include "poq/parser.hpp"

namespace {

const poq::EventLog& log_of(std::size_t traces) {
  static std::map<std::size_t, poq::EventLog> cache;
  auto it = cache.find(traces);
  if (it == cache.end())
    it = cache.emplace(traces, poq::synthetic_log({.traces = traces})).first;
  return it->second;
}

const std::vector<poq::Query>& suite() {
  static const auto queries =
      poq::generate_queries(log_of(500), poq::QueryGenConfig{}, 50);
  return queries;
}

void BM_EvalSuite(benchmark::State& state, poq::EvalMode mode) {
  const auto& log = log_of(500);
  const auto& queries = suite();
  for (auto _ : state) {
    for (const auto& q : queries) {
      auto r = poq::eval_log(log, q, mode);
      benchmark::DoNotOptimize(r.matched_traces.data());
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(queries.size() * log.size()));
}
BENCHMARK_CAPTURE(BM_EvalSuite, short_circuit, poq::EvalMode::ShortCircuit);
BENCHMARK_CAPTURE(BM_EvalSuite, full, poq::EvalMode::Full);

void BM_Parse(benchmark::State& state) {
  std::vector<std::string> texts;
  for (const auto& q : suite()) texts.push_back(poq::format(q));
  for (auto _ : state)
    for (const auto& t : texts) benchmark::DoNotOptimize(poq::parse(t));
}
BENCHMARK(BM_Parse);

// Trace construction: order, reduction and the label index.
void BM_BuildLog(benchmark::State& state) {
  const auto& src = log_of(static_cast<std::size_t>(state.range(0)));
  std::vector<std::vector<poq::ActivityInstance>> raw;
  for (const auto& t : src.traces())
    raw.emplace_back(t.instances().begin(), t.instances().end());
  for (auto _ : state) {
    std::vector<poq::Trace> traces;
    for (const auto& r : raw) traces.push_back(poq::Trace::build(r));
    benchmark::DoNotOptimize(poq::EventLog("b", std::move(traces)).variants().size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildLog)->Arg(100)->Arg(400)->Arg(1600)->Complexity();

void BM_VariantKey(benchmark::State& state) {
  const auto& log = log_of(500);
  for (auto _ : state)
    for (const auto& t : log.traces()) benchmark::DoNotOptimize(poq::variant_key(t));
}
BENCHMARK(BM_VariantKey);

}  // namespace
BENCHMARK_MAIN();
