#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poq/log_model.hpp"
#include "poq/query.hpp"

namespace poq {

class BenchError : public std::runtime_error {
 public:
  enum class Code { GenerationExhausted, EmptyInput, InvalidConfig };
  BenchError(Code code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Random query profile. Weights index Operator in declaration order
/// (isC, isS, isE, isDF, isEF, isP).
struct QueryGenConfig {
  std::size_t max_depth = 5;
  /// Probability that a node above max_depth becomes a leaf.
  double leaf_probability = 0.3;
  double not_probability = 0.1;
  std::array<double, 6> operator_weights = {1, 1, 1, 1, 1, 1};
  double cardinality_probability = 0.5;
  std::uint32_t k_min = 0;
  std::uint32_t k_max = 3;
  double set_probability = 0.2;
  std::size_t set_min = 2;
  std::size_t set_max = 3;
  std::uint64_t seed = 42;

  /// Throws BenchError(InvalidConfig).
  void validate() const;
  nlohmann::json to_json() const;
};

/// One random query over `labels`. Labels are drawn with probability
/// proportional to `label_weights` when given, uniformly otherwise.
Query random_query(std::mt19937_64& rng, const QueryGenConfig& config,
                   const std::vector<std::string>& labels,
                   const std::vector<double>& label_weights = {});

/// `n` random queries in desugared form, each matched by at least one and
/// fewer than all traces of `log`. Labels are sampled from the log alphabet weighted by
/// frequency. Deterministic for a fixed seed. Throws
/// BenchError(GenerationExhausted) after 1000 * n rejected candidates and
/// BenchError(EmptyInput) for an empty log.
std::vector<Query> generate_queries(const EventLog& log,
                                    const QueryGenConfig& config,
                                    std::size_t n);

struct BenchRecord {
  std::string query;
  std::size_t total_leaves = 0;
  double median_leaves_evaluated = 0;  // short-circuit, across traces
  double median_leaves_evaluated_full = 0;
  std::size_t matched_count = 0;
  bool modes_agree = true;  // identical per-trace matches in both modes
  double t_short_ms = 0;    // median over repetitions
  double t_full_ms = 0;
};

/// Benchmarks each query in both modes on a single thread: one warm-up
/// pass, then the median of `repetitions` timed passes per mode. Records
/// are in input order. Throws BenchError(InvalidConfig) for zero
/// repetitions.
std::vector<BenchRecord> run_bench(const EventLog& log,
                                   const std::vector<Query>& queries,
                                   std::size_t repetitions = 5);

/// Spearman rank correlation with average ranks for ties; nullopt when
/// either side is constant or there are fewer than two points.
std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y);

struct BenchReport {
  std::string csv;
  nlohmann::json summary;
};

/// CSV columns: query, total_leaves, median_leaves_evaluated, matched,
/// t_short_ms, t_full_ms. The summary holds the generator profile (when
/// given), Spearman correlation of median leaves vs t_short_ms (null when
/// undefined) and the distribution of t_full/t_short. Throws
/// BenchError(EmptyInput).
BenchReport emit_report(const std::vector<BenchRecord>& records,
                        const std::optional<QueryGenConfig>& profile = {});

/// Timing-free CSV (query, total_leaves, median_leaves_evaluated, matched);
/// byte-identical for a fixed seed.
std::string deterministic_csv(const std::vector<BenchRecord>& records);

/// Parameters of the synthetic loan-application-like log.
struct SyntheticLogConfig {
  std::size_t traces = 500;
  std::uint64_t seed = 7;
  /// Probability that an instance records a start timestamp.
  double start_probability = 0.6;
};

/// Traces built from a fixed process skeleton with parallel blocks,
/// optional steps, rework loops and overlapping intervals.
EventLog synthetic_log(const SyntheticLogConfig& config);

}  // namespace poq
