// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace namerec::corpus::detail {

enum class TokenKind { identifier, number, punct };

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t line;  // 1-based
};

/// Tokenizes comment- and literal-free text. Views point into `stripped`.
std::vector<Token> tokenize(std::string_view stripped);

bool is_reserved_word(std::string_view word);
bool is_identifier_start(unsigned char c);
bool is_identifier_part(unsigned char c);

}  // namespace namerec::corpus::detail
