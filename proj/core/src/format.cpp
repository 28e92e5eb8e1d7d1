#include "poq/parser.hpp"

namespace poq {
namespace {

std::string format_set(const LabelSet& set) {
  if (set.is_single()) return quote_label(set.label());
  std::string out = set.mode() == SetMode::Any ? "ANY{" : "ALL{";
  for (std::size_t i = 0; i < set.labels().size(); ++i) {
    if (i > 0) out += ',';
    out += quote_label(set.labels()[i]);
  }
  out += '}';
  return out;
}

}  // namespace

std::string quote_label(std::string_view label) {
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

std::string format(const Leaf& leaf) {
  std::string out = format_set(leaf.left);
  out += ' ';
  out += short_name(leaf.op);
  if (leaf.right) {
    out += ' ';
    out += format_set(*leaf.right);
  }
  if (leaf.card) {
    out += ' ';
    out += symbol(leaf.card->op);
    out += ' ';
    out += std::to_string(leaf.card->k);
  }
  return out;
}

std::string format(const Query& query) {
  switch (query.kind()) {
    case Query::Kind::Leaf: return format(query.as_leaf());
    case Query::Kind::Not: return "NOT(" + format(query.lhs()) + ")";
    case Query::Kind::And:
      return "(" + format(query.lhs()) + " AND " + format(query.rhs()) + ")";
    case Query::Kind::Or:
      return "(" + format(query.lhs()) + " OR " + format(query.rhs()) + ")";
  }
  return {};
}

}  // namespace poq
