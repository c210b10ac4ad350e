// Copyright 2026 The sqltutor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Tokenizer shared by the SELECT parser, the statement classifier and the
// DDL reader.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sqltutor::detail {

enum class TokenKind { Ident, QuotedIdent, String, Number, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;   // identifiers lower-cased; strings unescaped
  std::size_t pos = 0;

  bool is_word(std::string_view upper_word) const;
  bool is_symbol(std::string_view sym) const {
    return kind == TokenKind::Symbol && text == sym;
  }
};

/// Throws ParseError on unterminated strings, quoted identifiers or
/// comments. The returned vector always ends with an End token.
std::vector<Token> tokenize(std::string_view text);

std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace sqltutor::detail
