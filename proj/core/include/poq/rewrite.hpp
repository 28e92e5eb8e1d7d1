#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "poq/log_model.hpp"
#include "poq/query.hpp"

namespace poq {

/// Removes syntactic sugar in one top-down pass:
///  - unary leaves get an explicit cardinality (default >= 1);
///  - ANY/ALL sets on the unary side or the binary left side become OR/AND
///    chains of single-label leaves carrying the same cardinality;
///  - a binary right-side ALL without cardinality becomes an AND chain.
/// Right-side ANY (with or without cardinality) and right-side ALL with a
/// cardinality are kept; they are not expressible as Boolean combinations.
/// Idempotent.
Query desugar(const Query& query);

/// desugar() applied to a single leaf.
Query expand_leaf(const Leaf& leaf);

/// Parameters for random rule instantiation.
struct RuleSampleConfig {
  std::vector<std::string> alphabet = {"A", "B", "C", "D", "E", "F"};
  std::size_t max_set_size = 3;
  std::uint32_t max_k = 4;
};

struct RewriteRule {
  std::string name;
  std::string pattern;  // human-readable "lhs == rhs"
  /// Produces a random (lhs, rhs) instance of the rule.
  std::function<std::pair<Query, Query>(std::mt19937_64&,
                                        const RuleSampleConfig&)>
      instantiate;
};

/// The equivalences used for desugaring, plus the degenerate single-label
/// set identities. Fourteen rules; see docs/rewrite-rules.md.
const std::vector<RewriteRule>& equivalence_suite();

struct NonEquivalenceWitness {
  std::string name;
  Query lhs;
  Query rhs;
  Trace trace;
  bool lhs_value;  // expected eval(lhs, trace)
  bool rhs_value;  // expected eval(rhs, trace); differs from lhs_value
};

/// The right-set forms that are not sugar, each with a trace on which the
/// set form and its Boolean look-alike disagree.
std::vector<NonEquivalenceWitness> nonequivalence_witnesses();

}  // namespace poq
