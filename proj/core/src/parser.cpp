#include <algorithm>
#include <charconv>

#include "lexer_detail.hpp"
#include "poq/parser.hpp"

namespace poq {
namespace {

constexpr std::string_view kOperatorList =
    "operator (isC, isS, isE, isDF, isEF, isP)";

class Parser {
 public:
  Parser(std::string_view text, std::vector<Token> tokens)
      : text_(text), tokens_(std::move(tokens)) {}

  Query parse_all() {
    Query q = parse_or();
    if (peek().kind != TokenKind::End) {
      fail(peek(), "AND, OR or end of input");
    }
    return q;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(TokenKind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const Token& at, std::string_view expected) {
    std::string found = at.kind == TokenKind::End
                            ? std::string("end of input")
                            : "'" + std::string(text_.substr(
                                        at.begin, at.end - at.begin)) +
                                  "'";
    throw detail::make_error(text_, ParseErrc::Syntax, at.begin,
                             std::string(expected),
                             "expected " + std::string(expected) +
                                 ", found " + found);
  }

  const Token& expect(TokenKind kind, std::string_view expected) {
    if (peek().kind != kind) fail(peek(), expected);
    return advance();
  }

  Query parse_or() {
    Query lhs = parse_and();
    while (accept(TokenKind::Or)) lhs = Query::disjunction(lhs, parse_and());
    return lhs;
  }

  Query parse_and() {
    Query lhs = parse_unary();
    while (accept(TokenKind::And))
      lhs = Query::conjunction(lhs, parse_unary());
    return lhs;
  }

  Query parse_unary() {
    if (accept(TokenKind::Not)) return Query::negation(parse_unary());
    if (accept(TokenKind::LParen)) {
      Query inner = parse_or();
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    return parse_leaf();
  }

  LabelSet parse_label_set() {
    if (peek().kind == TokenKind::Label)
      return LabelSet::single(advance().text);
    if (peek().kind != TokenKind::SetMode)
      fail(peek(), "label, ANY{...}, ALL{...}, NOT or '('");
    const SetMode mode =
        advance().text == "ANY" ? SetMode::Any : SetMode::All;
    expect(TokenKind::LBrace, "'{'");
    std::vector<std::string> labels;
    labels.push_back(expect(TokenKind::Label, "label").text);
    while (accept(TokenKind::Comma))
      labels.push_back(expect(TokenKind::Label, "label").text);
    expect(TokenKind::RBrace, "',' or '}'");
    return LabelSet::of(mode, std::move(labels));
  }

  Query parse_leaf() {
    Leaf leaf;
    leaf.left = parse_label_set();
    const Token& op_tok = expect(TokenKind::Operator, kOperatorList);
    leaf.op = *detail::operator_keyword(op_tok.text);
    if (!is_unary(leaf.op)) {
      const Token& right_tok = peek();
      leaf.right = parse_label_set();
      if (!leaf.left.is_single() && !leaf.right->is_single()) {
        throw detail::make_error(
            text_, ParseErrc::Arity, right_tok.begin, "label",
            "ANY/ALL sets are not allowed on both sides of " +
                std::string(short_name(leaf.op)));
      }
    }
    if (peek().kind == TokenKind::CardOp) {
      const std::string sym = advance().text;
      Cardinality card;
      card.op = sym == "=" ? CardOp::Eq
                : sym == "<=" ? CardOp::Leq
                              : CardOp::Geq;
      const Token& k_tok = expect(TokenKind::Integer, "integer");
      std::uint64_t k = 0;
      std::from_chars(k_tok.text.data(), k_tok.text.data() + k_tok.text.size(),
                      k);
      card.k = static_cast<std::uint32_t>(k);
      leaf.card = card;
    }
    return Query::leaf(std::move(leaf));
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Query parse(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), detail::is_space)) {
    throw detail::make_error(text, ParseErrc::Empty, 0, "query",
                             "empty query");
  }
  return Parser(text, tokenize(text)).parse_all();
}

}  // namespace poq
