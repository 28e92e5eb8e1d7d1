#include "poq/evaluator.hpp"

#include <algorithm>
#include <thread>

#include "poq/parser.hpp"
#include "poq/rewrite.hpp"

namespace poq {
namespace {

bool related(const Trace& t, Operator op, std::size_t a, std::size_t b) {
  switch (op) {
    case Operator::DirectlyFollowed: return t.directly_precedes(a, b);
    case Operator::EventuallyFollowed: return t.precedes(a, b);
    case Operator::Parallel: return t.parallel(a, b);
    default: return false;
  }
}

// Positions for each right-hand label, resolved once per leaf.
struct RightSide {
  SetMode mode;
  std::vector<std::span<const std::size_t>> groups;
};

RightSide resolve(const Trace& t, const LabelSet& right) {
  RightSide rs{right.mode(), {}};
  rs.groups.reserve(right.labels().size());
  for (const auto& l : right.labels()) rs.groups.push_back(t.with_label(l));
  return rs;
}

bool inner(const Trace& t, Operator op, std::size_t a, const RightSide& rs) {
  auto witness = [&](std::span<const std::size_t> group) {
    return std::any_of(group.begin(), group.end(),
                       [&](std::size_t b) { return related(t, op, a, b); });
  };
  if (rs.mode == SetMode::All)
    return std::all_of(rs.groups.begin(), rs.groups.end(), witness);
  return std::any_of(rs.groups.begin(), rs.groups.end(), witness);
}

bool unary_member(const Trace& t, Operator op, std::size_t i) {
  switch (op) {
    case Operator::Start: return t.is_minimal(i);
    case Operator::End: return t.is_maximal(i);
    default: return true;
  }
}

bool eval_node(const Trace& t, const Query& q, EvalMode mode,
               std::size_t& leaves) {
  switch (q.kind()) {
    case Query::Kind::Leaf:
      ++leaves;
      return eval_leaf(t, q.as_leaf());
    case Query::Kind::Not:
      return !eval_node(t, q.lhs(), mode, leaves);
    case Query::Kind::And: {
      const bool l = eval_node(t, q.lhs(), mode, leaves);
      if (!l && mode == EvalMode::ShortCircuit) return false;
      const bool r = eval_node(t, q.rhs(), mode, leaves);
      return l && r;
    }
    case Query::Kind::Or: {
      const bool l = eval_node(t, q.lhs(), mode, leaves);
      if (l && mode == EvalMode::ShortCircuit) return true;
      const bool r = eval_node(t, q.rhs(), mode, leaves);
      return l || r;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(EvalMode mode) {
  return mode == EvalMode::ShortCircuit ? "short" : "full";
}

std::vector<std::size_t> satisfying_set_unary(const Trace& trace, Operator op,
                                              std::string_view label) {
  std::vector<std::size_t> out;
  for (auto i : trace.with_label(label))
    if (unary_member(trace, op, i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> satisfying_set_binary(const Trace& trace,
                                               Operator op,
                                               std::string_view left,
                                               const LabelSet& right) {
  const RightSide rs = resolve(trace, right);
  std::vector<std::size_t> out;
  for (auto a : trace.with_label(left))
    if (inner(trace, op, a, rs)) out.push_back(a);
  return out;
}

bool cardinality_holds(std::size_t count, const Cardinality& card) {
  switch (card.op) {
    case CardOp::Eq: return count == card.k;
    case CardOp::Leq: return count <= card.k;
    case CardOp::Geq: return count >= card.k;
  }
  return false;
}

bool eval_leaf(const Trace& trace, const Leaf& leaf) {
  if (!leaf.left.is_single()) {
    std::size_t ignored = 0;
    return eval_node(trace, expand_leaf(leaf), EvalMode::ShortCircuit,
                     ignored);
  }
  const std::string& label = leaf.left.label();

  if (is_unary(leaf.op)) {
    std::size_t count = 0;
    for (auto i : trace.with_label(label))
      if (unary_member(trace, leaf.op, i)) ++count;
    return cardinality_holds(count, leaf.card.value_or(Cardinality{}));
  }

  const RightSide rs = resolve(trace, *leaf.right);
  const auto lefts = trace.with_label(label);
  if (!leaf.card) {
    return std::all_of(lefts.begin(), lefts.end(), [&](std::size_t a) {
      return inner(trace, leaf.op, a, rs);
    });
  }
  const auto count = static_cast<std::size_t>(
      std::count_if(lefts.begin(), lefts.end(), [&](std::size_t a) {
        return inner(trace, leaf.op, a, rs);
      }));
  return cardinality_holds(count, *leaf.card);
}

EvalOutcome eval_query(const Trace& trace, const Query& query, EvalMode mode) {
  EvalOutcome out;
  out.total_leaves = query.leaf_count();
  out.matched = eval_node(trace, query, mode, out.leaves_evaluated);
  return out;
}

double LogResult::median_leaves_evaluated() const {
  if (per_trace.empty()) return 0.0;
  std::vector<std::size_t> v;
  v.reserve(per_trace.size());
  for (const auto& o : per_trace) v.push_back(o.leaves_evaluated);
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[m]);
  return (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2.0;
}

LogResult eval_log(const EventLog& log, const Query& query, EvalMode mode,
                   unsigned threads) {
  const auto started = std::chrono::steady_clock::now();
  LogResult result;
  result.total_leaves = query.leaf_count();
  result.per_trace.resize(log.size());

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      result.per_trace[i] = eval_query(log.trace(i), query, mode);
  };
  threads = std::max(1U, std::min<unsigned>(
                             threads, static_cast<unsigned>(log.size())));
  if (threads <= 1) {
    run_range(0, log.size());
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (log.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < log.size(); begin += chunk)
      workers.emplace_back(run_range, begin,
                           std::min(log.size(), begin + chunk));
  }

  std::vector<std::size_t> per_variant(log.variants().size(), 0);
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (!result.per_trace[i].matched) continue;
    result.matched_traces.push_back(i);
    ++per_variant[log.variant_index_of(i)];
  }
  for (std::size_t g = 0; g < per_variant.size(); ++g)
    if (per_variant[g] > 0) result.matched_variants.push_back({g, per_variant[g]});

  result.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

nlohmann::json variant_to_json(const EventLog& log,
                               std::size_t variant_index) {
  const VariantGroup& group = log.variants()[variant_index];
  const Trace& rep = log.trace(group.representative);
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.size(); ++i)
    nodes.push_back({{"id", i}, {"label", rep.instance(i).label}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : rep.reduction().pairs()) edges.push_back({a, b});
  return {{"key", group.canonical_key},
          {"count", group.trace_indices.size()},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

nlohmann::json result_to_json(const EventLog& log, const Query& query,
                              EvalMode mode, const LogResult& result) {
  nlohmann::json ids = nlohmann::json::array();
  for (auto i : result.matched_traces) ids.push_back(log.trace(i).case_id());
  nlohmann::json variants = nlohmann::json::array();
  for (const auto& mv : result.matched_variants) {
    nlohmann::json v = variant_to_json(log, mv.variant_index);
    v["count"] = mv.count;
    variants.push_back(std::move(v));
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(result.wall_time).count();
  return {
      {"query", format(query)},
      {"mode", to_string(mode)},
      {"trace_count", log.size()},
      {"variant_count", log.variants().size()},
      {"matched_trace_count", result.matched_traces.size()},
      {"matched_variant_count", result.matched_variants.size()},
      {"matched_trace_ids", std::move(ids)},
      {"matched_variants", std::move(variants)},
      {"metrics",
       {{"total_leaves", result.total_leaves},
        {"median_leaves_evaluated", result.median_leaves_evaluated()},
        {"wall_time_ms", wall_ms}}},
  };
}

}  // namespace poq
