#include <array>
#include <cctype>
#include <optional>
#include <utility>

#include "lexer_detail.hpp"
#include "poq/parser.hpp"

namespace poq {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Label: return "label";
    case TokenKind::Operator: return "operator";
    case TokenKind::SetMode: return "ANY/ALL";
    case TokenKind::And: return "AND";
    case TokenKind::Or: return "OR";
    case TokenKind::Not: return "NOT";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::CardOp: return "cardinality operator";
    case TokenKind::Integer: return "integer";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::string_view to_string(ParseErrc code) {
  switch (code) {
    case ParseErrc::Empty: return "empty_query";
    case ParseErrc::UnterminatedLabel: return "unterminated_label";
    case ParseErrc::UnknownCharacter: return "unknown_character";
    case ParseErrc::Syntax: return "syntax_error";
    case ParseErrc::Arity: return "arity_error";
    case ParseErrc::CardinalityRange: return "cardinality_range";
  }
  return "?";
}

ParseError::ParseError(ParseErrc code, std::size_t offset, std::size_t line,
                       std::size_t column, std::string expected,
                       std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      code_(code),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      message_(std::move(message)) {}

namespace detail {

ParseError make_error(std::string_view text, ParseErrc code,
                      std::size_t offset, std::string expected,
                      std::string message) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(code, offset, line, column, std::move(expected),
                    std::move(message));
}

std::optional<Operator> operator_keyword(std::string_view word) {
  static constexpr std::array<Operator, 6> kOps = {
      Operator::Contained,        Operator::Start,
      Operator::End,              Operator::DirectlyFollowed,
      Operator::EventuallyFollowed, Operator::Parallel};
  for (auto op : kOps)
    if (word == short_name(op) || word == long_name(op)) return op;
  return std::nullopt;
}

namespace {

bool word_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

LexStep lex_one(std::string_view text, std::size_t pos) {
  LexStep step;
  Token& tok = step.token;
  tok.begin = pos;
  const char c = text[pos];

  auto simple = [&](TokenKind kind, std::size_t len) {
    tok.kind = kind;
    tok.end = pos + len;
    tok.text = std::string(text.substr(pos, len));
    return step;
  };

  if (c == '\'') {
    std::string label;
    std::size_t i = pos + 1;
    while (i < text.size()) {
      if (text[i] == '\'') {
        if (i + 1 < text.size() && text[i + 1] == '\'') {
          label += '\'';
          i += 2;
          continue;
        }
        tok.kind = TokenKind::Label;
        tok.end = i + 1;
        tok.text = std::move(label);
        return step;
      }
      label += text[i++];
    }
    step.error = ParseErrc::UnterminatedLabel;
    tok.end = text.size();
    step.message = "unterminated label";
    return step;
  }
  switch (c) {
    case '{': return simple(TokenKind::LBrace, 1);
    case '}': return simple(TokenKind::RBrace, 1);
    case '(': return simple(TokenKind::LParen, 1);
    case ')': return simple(TokenKind::RParen, 1);
    case ',': return simple(TokenKind::Comma, 1);
    case '=': return simple(TokenKind::CardOp, 1);
    default: break;
  }
  if ((c == '<' || c == '>') && pos + 1 < text.size() &&
      text[pos + 1] == '=') {
    return simple(TokenKind::CardOp, 2);
  }
  // U+2264 / U+2265
  if (text.substr(pos, 3) == "\xE2\x89\xA4") {
    simple(TokenKind::CardOp, 3);
    tok.text = "<=";
    return step;
  }
  if (text.substr(pos, 3) == "\xE2\x89\xA5") {
    simple(TokenKind::CardOp, 3);
    tok.text = ">=";
    return step;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t i = pos;
    std::uint64_t value = 0;
    bool overflow = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (value > kMaxCardinality) overflow = true;
      ++i;
    }
    simple(TokenKind::Integer, i - pos);
    if (overflow) {
      step.error = ParseErrc::CardinalityRange;
      step.message = "cardinality exceeds " + std::to_string(kMaxCardinality);
    }
    return step;
  }
  if (word_start(c)) {
    std::size_t i = pos;
    while (i < text.size() && word_char(text[i])) ++i;
    const std::string_view word = text.substr(pos, i - pos);
    TokenKind kind = TokenKind::Identifier;
    if (operator_keyword(word)) kind = TokenKind::Operator;
    else if (word == "ANY" || word == "ALL") kind = TokenKind::SetMode;
    else if (word == "AND") kind = TokenKind::And;
    else if (word == "OR") kind = TokenKind::Or;
    else if (word == "NOT") kind = TokenKind::Not;
    return simple(kind, i - pos);
  }

  // Unknown: consume one UTF-8 code point.
  std::size_t len = 1;
  const auto uc = static_cast<unsigned char>(c);
  if (uc >= 0xF0) len = 4;
  else if (uc >= 0xE0) len = 3;
  else if (uc >= 0xC0) len = 2;
  len = std::min(len, text.size() - pos);
  simple(TokenKind::Identifier, len);
  step.error = ParseErrc::UnknownCharacter;
  step.message = "unknown character '" + tok.text + "'";
  return step;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace detail

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && detail::is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    auto step = detail::lex_one(text, pos);
    if (step.error) {
      throw detail::make_error(text, *step.error, step.token.begin, "",
                               step.message);
    }
    pos = step.token.end;
    out.push_back(std::move(step.token));
  }
  Token end;
  end.kind = TokenKind::End;
  end.begin = end.end = text.size();
  out.push_back(std::move(end));
  return out;
}

std::string_view to_string(HighlightClass cls) {
  switch (cls) {
    case HighlightClass::Label: return "label";
    case HighlightClass::Operator: return "operator";
    case HighlightClass::SetMode: return "set";
    case HighlightClass::Boolean: return "boolean";
    case HighlightClass::CardOp: return "cardinality";
    case HighlightClass::Number: return "number";
    case HighlightClass::Punctuation: return "punctuation";
    case HighlightClass::Error: return "error";
  }
  return "error";
}

std::vector<HighlightSpan> highlight(std::string_view text) {
  std::vector<HighlightSpan> out;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && detail::is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    const auto step = detail::lex_one(text, pos);
    HighlightClass cls = HighlightClass::Error;
    if (!step.error) {
      switch (step.token.kind) {
        case TokenKind::Label: cls = HighlightClass::Label; break;
        case TokenKind::Operator: cls = HighlightClass::Operator; break;
        case TokenKind::SetMode: cls = HighlightClass::SetMode; break;
        case TokenKind::And:
        case TokenKind::Or:
        case TokenKind::Not: cls = HighlightClass::Boolean; break;
        case TokenKind::CardOp: cls = HighlightClass::CardOp; break;
        case TokenKind::Integer: cls = HighlightClass::Number; break;
        case TokenKind::LBrace:
        case TokenKind::RBrace:
        case TokenKind::LParen:
        case TokenKind::RParen:
        case TokenKind::Comma: cls = HighlightClass::Punctuation; break;
        case TokenKind::Identifier:
        case TokenKind::End: cls = HighlightClass::Error; break;
      }
    }
    out.push_back({step.token.begin, step.token.end, cls});
    pos = step.token.end;
  }
  return out;
}

}  // namespace poq
