#include "poq/query.hpp"

#include <algorithm>

namespace poq {

std::string_view short_name(Operator op) {
  switch (op) {
    case Operator::Contained: return "isC";
    case Operator::Start: return "isS";
    case Operator::End: return "isE";
    case Operator::DirectlyFollowed: return "isDF";
    case Operator::EventuallyFollowed: return "isEF";
    case Operator::Parallel: return "isP";
  }
  return "?";
}

std::string_view long_name(Operator op) {
  switch (op) {
    case Operator::Contained: return "isContained";
    case Operator::Start: return "isStart";
    case Operator::End: return "isEnd";
    case Operator::DirectlyFollowed: return "isDirectlyFollowed";
    case Operator::EventuallyFollowed: return "isEventuallyFollowed";
    case Operator::Parallel: return "isParallel";
  }
  return "?";
}

std::string_view symbol(CardOp op) {
  switch (op) {
    case CardOp::Eq: return "=";
    case CardOp::Leq: return "<=";
    case CardOp::Geq: return ">=";
  }
  return "?";
}

LabelSet LabelSet::single(std::string label) {
  LabelSet s;
  s.mode_ = SetMode::Single;
  s.labels_.push_back(std::move(label));
  return s;
}

LabelSet LabelSet::of(SetMode mode, std::vector<std::string> labels) {
  LabelSet s;
  s.mode_ = mode;
  for (auto& l : labels) {
    if (std::find(s.labels_.begin(), s.labels_.end(), l) == s.labels_.end())
      s.labels_.push_back(std::move(l));
  }
  return s;
}

std::optional<std::string> check_leaf(const Leaf& leaf) {
  if (leaf.left.labels().empty()) return "empty label set";
  if (is_unary(leaf.op)) {
    if (leaf.right)
      return std::string(short_name(leaf.op)) + " takes no right operand";
    return std::nullopt;
  }
  if (!leaf.right)
    return std::string(short_name(leaf.op)) + " requires a right operand";
  if (leaf.right->labels().empty()) return "empty label set";
  if (!leaf.left.is_single() && !leaf.right->is_single())
    return "ANY/ALL sets are not allowed on both sides of " +
           std::string(short_name(leaf.op));
  return std::nullopt;
}

Query Query::leaf(Leaf leaf) {
  return Query(std::make_shared<const Node>(
      Node{Kind::Leaf, std::move(leaf), {}}));
}

Query Query::negation(Query operand) {
  return Query(std::make_shared<const Node>(
      Node{Kind::Not, {}, {std::move(operand)}}));
}

Query Query::conjunction(Query lhs, Query rhs) {
  return Query(std::make_shared<const Node>(
      Node{Kind::And, {}, {std::move(lhs), std::move(rhs)}}));
}

Query Query::disjunction(Query lhs, Query rhs) {
  return Query(std::make_shared<const Node>(
      Node{Kind::Or, {}, {std::move(lhs), std::move(rhs)}}));
}

std::size_t Query::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : node_->children) n += c.leaf_count();
  return n;
}

std::size_t Query::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth());
  return d + 1;
}

bool operator==(const Query& a, const Query& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_leaf()) return a.as_leaf() == b.as_leaf();
  return a.node_->children == b.node_->children;
}

}  // namespace poq
