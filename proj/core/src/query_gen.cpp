#include <algorithm>

#include "poq/bench.hpp"
#include "poq/evaluator.hpp"
#include "poq/random.hpp"
#include "poq/rewrite.hpp"

namespace poq {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw BenchError(BenchError::Code::InvalidConfig, what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

class QueryGenerator {
 public:
  QueryGenerator(std::mt19937_64& rng, const QueryGenConfig& cfg,
                 const std::vector<std::string>& labels,
                 const std::vector<double>& weights)
      : rng_(rng), cfg_(cfg), labels_(labels), weights_(weights) {}

  Query node(std::size_t depth) {
    const bool force_leaf = depth + 1 >= cfg_.max_depth;
    if (force_leaf || rnd::chance(rng_, cfg_.leaf_probability))
      return Query::leaf(leaf());
    if (rnd::chance(rng_, cfg_.not_probability))
      return Query::negation(node(depth + 1));
    Query lhs = node(depth + 1);
    Query rhs = node(depth + 1);
    return rnd::chance(rng_, 0.5) ? Query::conjunction(lhs, rhs)
                                  : Query::disjunction(lhs, rhs);
  }

 private:
  std::string label() {
    if (weights_.empty()) return labels_[rnd::index(rng_, labels_.size())];
    return labels_[rnd::weighted(rng_, weights_)];
  }

  LabelSet label_set() {
    const std::size_t hi = std::min(cfg_.set_max, labels_.size());
    const std::size_t lo = std::min(cfg_.set_min, hi);
    const auto size = static_cast<std::size_t>(rnd::between(
        rng_, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
    std::vector<std::string> picked;
    // Weighted draws; duplicates collapse, so the set may come out smaller.
    for (std::size_t i = 0; i < size; ++i) picked.push_back(label());
    const SetMode mode = rnd::chance(rng_, 0.5) ? SetMode::Any : SetMode::All;
    return LabelSet::of(mode, std::move(picked));
  }

  Leaf leaf() {
    Leaf leaf;
    leaf.op = static_cast<Operator>(rnd::weighted(rng_, cfg_.operator_weights));
    const bool left_set = rnd::chance(rng_, cfg_.set_probability);
    leaf.left = left_set ? label_set() : LabelSet::single(label());
    if (!is_unary(leaf.op)) {
      const bool right_set =
          !leaf.left.is_single() ? false
                                 : rnd::chance(rng_, cfg_.set_probability);
      leaf.right = right_set ? label_set() : LabelSet::single(label());
    }
    if (rnd::chance(rng_, cfg_.cardinality_probability)) {
      static constexpr CardOp kOps[] = {CardOp::Eq, CardOp::Leq, CardOp::Geq};
      leaf.card = Cardinality{
          kOps[rnd::index(rng_, 3)],
          static_cast<std::uint32_t>(rnd::between(rng_, cfg_.k_min, cfg_.k_max))};
    }
    return leaf;
  }

  std::mt19937_64& rng_;
  const QueryGenConfig& cfg_;
  const std::vector<std::string>& labels_;
  const std::vector<double>& weights_;
};

}  // namespace

void QueryGenConfig::validate() const {
  require(max_depth >= 1, "max_depth must be at least 1");
  require(is_probability(leaf_probability), "leaf_probability not in [0,1]");
  require(is_probability(not_probability), "not_probability not in [0,1]");
  require(is_probability(cardinality_probability),
          "cardinality_probability not in [0,1]");
  require(is_probability(set_probability), "set_probability not in [0,1]");
  require(k_min <= k_max && k_max <= kMaxCardinality, "empty k range");
  require(set_min >= 1 && set_min <= set_max, "empty set size range");
  require(std::all_of(operator_weights.begin(), operator_weights.end(),
                      [](double w) { return w >= 0; }) &&
              std::any_of(operator_weights.begin(), operator_weights.end(),
                          [](double w) { return w > 0; }),
          "operator weights must be non-negative and not all zero");
}

nlohmann::json QueryGenConfig::to_json() const {
  return {{"max_depth", max_depth},
          {"leaf_probability", leaf_probability},
          {"not_probability", not_probability},
          {"operator_weights",
           {{"isC", operator_weights[0]},
            {"isS", operator_weights[1]},
            {"isE", operator_weights[2]},
            {"isDF", operator_weights[3]},
            {"isEF", operator_weights[4]},
            {"isP", operator_weights[5]}}},
          {"cardinality_probability", cardinality_probability},
          {"k_min", k_min},
          {"k_max", k_max},
          {"set_probability", set_probability},
          {"set_min", set_min},
          {"set_max", set_max},
          {"seed", seed}};
}

Query random_query(std::mt19937_64& rng, const QueryGenConfig& config,
                   const std::vector<std::string>& labels,
                   const std::vector<double>& label_weights) {
  config.validate();
  if (labels.empty())
    throw BenchError(BenchError::Code::InvalidConfig, "no labels to sample");
  return QueryGenerator(rng, config, labels, label_weights).node(0);
}

std::vector<Query> generate_queries(const EventLog& log,
                                    const QueryGenConfig& config,
                                    std::size_t n) {
  config.validate();
  std::vector<Query> out;
  if (n == 0) return out;
  if (log.size() == 0)
    throw BenchError(BenchError::Code::EmptyInput, "log has no traces");
  if (log.size() < 2) {
    throw BenchError(BenchError::Code::GenerationExhausted,
                     "pre-selection needs at least two traces");
  }

  std::vector<std::string> labels;
  std::vector<double> weights;
  for (const auto& [label, count] : log.label_alphabet()) {
    labels.push_back(label);
    weights.push_back(static_cast<double>(count));
  }

  std::mt19937_64 rng(config.seed);
  QueryGenerator gen(rng, config, labels, weights);
  const std::size_t budget = 1000 * n;
  for (std::size_t attempt = 0; attempt < budget && out.size() < n;
       ++attempt) {
    // Sugar is removed so that every leaf of a suite query is one clause of
    // the evaluation semantics and leaf counts measure the work done.
    Query q = desugar(gen.node(0));
    const auto result = eval_log(log, q, EvalMode::ShortCircuit);
    const std::size_t matched = result.matched_traces.size();
    if (matched > 0 && matched < log.size()) out.push_back(std::move(q));
  }
  if (out.size() < n) {
    throw BenchError(BenchError::Code::GenerationExhausted,
                     "only " + std::to_string(out.size()) + " of " +
                         std::to_string(n) + " queries passed pre-selection");
  }
  return out;
}

}  // namespace poq
