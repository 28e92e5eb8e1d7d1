#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "poq/parser.hpp"

namespace poq::detail {

struct LexStep {
  Token token;
  std::optional<ParseErrc> error;
  std::string message;
};

/// Lexes one token starting at a non-space byte. On error the token still
/// spans the offending bytes.
LexStep lex_one(std::string_view text, std::size_t pos);

bool is_space(char c);

std::optional<Operator> operator_keyword(std::string_view word);

ParseError make_error(std::string_view text, ParseErrc code,
                      std::size_t offset, std::string expected,
                      std::string message);

}  // namespace poq::detail
