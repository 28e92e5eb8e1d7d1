#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "poq/log_model.hpp"
#include "poq/query.hpp"

namespace poq {

enum class EvalMode {
  /// Depth-first, left to right; skips the right operand of AND when the
  /// left is false and of OR when the left is true.
  ShortCircuit,
  /// Evaluates every leaf.
  Full,
};

std::string_view to_string(EvalMode mode);

struct EvalOutcome {
  bool matched = false;
  std::size_t leaves_evaluated = 0;
  std::size_t total_leaves = 0;

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

/// isC: instances labeled `label`; isS/isE: those that are also minimal /
/// maximal. Positions ascending.
std::vector<std::size_t> satisfying_set_unary(const Trace& trace, Operator op,
                                              std::string_view label);

/// Instances `a` labeled `left` that relate to the right set: for Single and
/// Any, some instance carrying a right label relates to `a`; for All, every
/// right label has such an instance. The relation is the reduction (isDF),
/// the order (isEF) or incomparability (isP, which admits `a` itself).
std::vector<std::size_t> satisfying_set_binary(const Trace& trace,
                                               Operator op,
                                               std::string_view left,
                                               const LabelSet& right);

/// Exactly / at most / at least `k`.
bool cardinality_holds(std::size_t count, const Cardinality& card);

/// Value of a single constraint. Unary leaves without a cardinality mean
/// ">= 1"; binary leaves without one must hold for every left-labeled
/// instance (vacuously true when there is none). Sets on the unary or
/// binary-left side are expanded into AND/OR of single-label leaves.
bool eval_leaf(const Trace& trace, const Leaf& leaf);

EvalOutcome eval_query(const Trace& trace, const Query& query,
                       EvalMode mode = EvalMode::ShortCircuit);

struct MatchedVariant {
  std::size_t variant_index = 0;  // into EventLog::variants()
  std::size_t count = 0;          // matched traces of this variant
};

struct LogResult {
  std::vector<std::size_t> matched_traces;  // indices into the log, ascending
  std::vector<MatchedVariant> matched_variants;  // in EventLog variant order
  std::vector<EvalOutcome> per_trace;            // log order
  std::size_t total_leaves = 0;
  std::chrono::nanoseconds wall_time{0};

  double median_leaves_evaluated() const;
};

/// Evaluates `query` on every trace. With threads > 1 the traces are split
/// into contiguous chunks; results do not depend on the thread count.
LogResult eval_log(const EventLog& log, const Query& query,
                   EvalMode mode = EvalMode::ShortCircuit,
                   unsigned threads = 1);

/// Labeled reduction of a variant's representative trace:
/// {key, count, nodes: [{id, label}], edges: [[from, to], ...]}.
nlohmann::json variant_to_json(const EventLog& log, std::size_t variant_index);

/// The query response shared by the CLI (--json) and the HTTP service:
/// {query, mode, trace_count, variant_count, matched_trace_count,
///  matched_variant_count, matched_trace_ids, matched_variants: [{key, count,
///  nodes, edges}], metrics: {total_leaves, median_leaves_evaluated,
///  wall_time_ms}}.
nlohmann::json result_to_json(const EventLog& log, const Query& query,
                              EvalMode mode, const LogResult& result);

}  // namespace poq
