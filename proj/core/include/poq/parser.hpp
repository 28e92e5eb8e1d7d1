#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poq/query.hpp"

namespace poq {

enum class TokenKind {
  Label,       // 'text' with '' escaping a quote
  Operator,    // isC isContained ... isP isParallel
  SetMode,     // ANY ALL
  And,
  Or,
  Not,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  CardOp,      // = <= >= (also the Unicode forms)
  Integer,
  Identifier,  // any other word; always a parse error
  End,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::size_t begin = 0;  // byte offsets into the input
  std::size_t end = 0;
  std::string text;  // unescaped label text, or the lexeme
};

enum class ParseErrc {
  Empty,
  UnterminatedLabel,
  UnknownCharacter,
  Syntax,
  Arity,
  CardinalityRange,
};

std::string_view to_string(ParseErrc code);

/// Positioned query error. `line` and `column` are 1-based; the column
/// counts bytes.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrc code, std::size_t offset, std::size_t line,
             std::size_t column, std::string expected, std::string message);

  ParseErrc code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ParseErrc code_;
  std::size_t offset_, line_, column_;
  std::string expected_;
  std::string message_;
};

/// Lexes the whole input; the last token is End. Throws ParseError
/// (UnterminatedLabel, UnknownCharacter, CardinalityRange).
std::vector<Token> tokenize(std::string_view text);

/// Parses a query. Precedence NOT > AND > OR, AND/OR associate left,
/// parentheses override. Throws ParseError.
Query parse(std::string_view text);

/// Fully parenthesised canonical text; parse(format(q)) == q.
std::string format(const Query& query);
std::string format(const Leaf& leaf);
std::string quote_label(std::string_view label);

enum class HighlightClass {
  Label,
  Operator,
  SetMode,
  Boolean,
  CardOp,
  Number,
  Punctuation,
  Error,
};

std::string_view to_string(HighlightClass cls);

struct HighlightSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  HighlightClass cls = HighlightClass::Error;
};

/// Best-effort classification of every non-whitespace byte range. Never
/// throws; lexical errors and unknown words become Error spans.
std::vector<HighlightSpan> highlight(std::string_view text);

}  // namespace poq
