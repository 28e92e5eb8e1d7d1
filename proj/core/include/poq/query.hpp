#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poq {

enum class Operator {
  Contained,           // isC
  Start,               // isS
  End,                 // isE
  DirectlyFollowed,    // isDF
  EventuallyFollowed,  // isEF
  Parallel,            // isP
};

constexpr bool is_unary(Operator op) {
  return op == Operator::Contained || op == Operator::Start ||
         op == Operator::End;
}

std::string_view short_name(Operator op);
std::string_view long_name(Operator op);

enum class CardOp { Eq, Leq, Geq };

std::string_view symbol(CardOp op);

/// Largest accepted cardinality bound.
inline constexpr std::uint32_t kMaxCardinality = 1'000'000'000;

struct Cardinality {
  CardOp op = CardOp::Geq;
  std::uint32_t k = 1;

  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

enum class SetMode { Single, Any, All };

/// A single label or an ANY/ALL set of labels. Duplicates are removed on
/// construction, keeping first occurrences.
class LabelSet {
 public:
  LabelSet() = default;
  static LabelSet single(std::string label);
  /// `mode` must be Any or All; `labels` must be non-empty.
  static LabelSet of(SetMode mode, std::vector<std::string> labels);

  SetMode mode() const noexcept { return mode_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool is_single() const noexcept { return mode_ == SetMode::Single; }
  /// The label of a Single set.
  const std::string& label() const { return labels_.front(); }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  SetMode mode_ = SetMode::Single;
  std::vector<std::string> labels_;
};

/// One control-flow constraint.
struct Leaf {
  Operator op = Operator::Contained;
  LabelSet left;
  std::optional<LabelSet> right;  // present iff op is binary
  std::optional<Cardinality> card;

  friend bool operator==(const Leaf&, const Leaf&) = default;
};

/// Returns an error message when `leaf` violates the arity rules (unary
/// without right side, binary with one, at most one non-single side), or
/// nullopt when it is well formed.
std::optional<std::string> check_leaf(const Leaf& leaf);

/// Immutable query tree. Copies share structure.
class Query {
 public:
  enum class Kind { Leaf, Not, And, Or };

  static Query leaf(Leaf leaf);
  static Query negation(Query operand);
  static Query conjunction(Query lhs, Query rhs);
  static Query disjunction(Query lhs, Query rhs);

  Kind kind() const noexcept { return node_->kind; }
  bool is_leaf() const noexcept { return kind() == Kind::Leaf; }
  const Leaf& as_leaf() const { return node_->leaf; }
  /// Operand of Not, left operand of And/Or.
  const Query& lhs() const { return node_->children.front(); }
  const Query& rhs() const { return node_->children.back(); }

  std::size_t leaf_count() const;
  std::size_t depth() const;

  friend bool operator==(const Query& a, const Query& b);

 private:
  struct Node {
    Kind kind;
    Leaf leaf;
    std::vector<Query> children;
  };
  explicit Query(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace poq
