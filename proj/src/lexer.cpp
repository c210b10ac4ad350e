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


#include "lexer.hpp"

#include <cctype>

#include "sqltutor/errors.hpp"

namespace sqltutor::detail {

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool Token::is_word(std::string_view upper_word) const {
  if (kind != TokenKind::Ident || text.size() != upper_word.size()) return false;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(text[i])) != upper_word[i]) return false;
  return true;
}

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool ident_char(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '$';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '-') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      const auto end = text.find("*/", i + 2);
      if (end == std::string_view::npos) throw ParseError(i, "end of comment");
      i = end + 2;
      continue;
    }
    Token tok;
    tok.pos = i;
    if (c == '\'' || c == '"' || c == '`') {
      const char quote = c;
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        if (text[j] == quote) {
          if (j + 1 < n && text[j + 1] == quote) {
            value += quote;
            j += 2;
            continue;
          }
          closed = true;
          ++j;
          break;
        }
        value += text[j++];
      }
      if (!closed) throw ParseError(i, std::string("closing ") + quote);
      tok.kind = quote == '`' ? TokenKind::QuotedIdent : TokenKind::String;
      tok.text = quote == '`' ? to_lower(value) : value;
      out.push_back(std::move(tok));
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < n && text[j] == '.') {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < n && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      tok.kind = TokenKind::Number;
      tok.text = std::string(text.substr(i, j - i));
      out.push_back(std::move(tok));
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < n && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = to_lower(text.substr(i, j - i));
      out.push_back(std::move(tok));
      i = j;
      continue;
    }
    static constexpr std::string_view kTwoChar[] = {"<=", ">=", "<>", "!=", "||", "=="};
    tok.kind = TokenKind::Symbol;
    bool two = false;
    if (i + 1 < n) {
      for (auto sym : kTwoChar) {
        if (text.substr(i, 2) == sym) {
          tok.text = std::string(sym);
          two = true;
          break;
        }
      }
    }
    if (!two) tok.text = std::string(1, c);
    i += tok.text.size();
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.pos = n;
  out.push_back(end);
  return out;
}

}  // namespace sqltutor::detail
