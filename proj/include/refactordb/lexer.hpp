// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace refactordb {

enum class TokenKind { Identifier, QuotedIdentifier, Number, String, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    /// Identifier text uppercased, quoted identifier verbatim, string literal
    /// content unescaped, number and symbol as written.
    std::string text;
    std::size_t offset = 0;
    std::size_t length = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is_keyword(std::string_view upper) const { return kind == TokenKind::Identifier && text == upper; }
    bool is_symbol(std::string_view symbol) const { return kind == TokenKind::Symbol && text == symbol; }
};

/// Tokenizes SQL text. Comments (`--`, `/* */`) are skipped. Multi-character
/// symbols: `||`, `<=`, `>=`, `<>`, `!=`. Throws SyntaxError on an
/// unterminated string/identifier or a stray character. The returned list
/// always ends with an End token.
std::vector<Token> tokenize(std::string_view text);

/// Source text of a token including its quotes, as it appeared.
inline std::string_view token_source(std::string_view text, const Token& token)
{
    return text.substr(token.offset, token.length);
}

} // namespace refactordb
