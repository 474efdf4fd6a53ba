// SPDX-License-Identifier: Apache-2.0

#include "refactordb/lexer.hpp"

#include "refactordb/errors.hpp"
#include "refactordb/schema_model.hpp"

#include <cctype>

namespace refactordb {

namespace {

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_part(char c)
{
    return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '$' || c == '#';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        while (true) {
            skip_trivia();
            Token token;
            token.offset = pos_;
            token.line = line_;
            token.column = column_;
            if (pos_ >= text_.size()) {
                token.kind = TokenKind::End;
                tokens.push_back(token);
                return tokens;
            }
            char c = text_[pos_];
            if (is_ident_start(c)) {
                while (pos_ < text_.size() && is_ident_part(text_[pos_]))
                    advance();
                token.kind = TokenKind::Identifier;
                token.text = to_upper(text_.substr(token.offset, pos_ - token.offset));
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < text_.size() &&
                        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    advance();
                if (pos_ < text_.size() && text_[pos_] == '.') {
                    advance();
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        advance();
                }
                token.kind = TokenKind::Number;
                token.text = std::string(text_.substr(token.offset, pos_ - token.offset));
            } else if (c == '\'') {
                token.kind = TokenKind::String;
                token.text = delimited('\'', token, "unterminated string literal");
            } else if (c == '"') {
                token.kind = TokenKind::QuotedIdentifier;
                token.text = delimited('"', token, "unterminated quoted identifier");
                if (token.text.empty())
                    throw SyntaxError("empty quoted identifier", token.line, token.column);
            } else {
                token.kind = TokenKind::Symbol;
                static constexpr std::string_view two_char[] = {"||", "<=", ">=", "<>", "!="};
                bool matched = false;
                for (auto sym : two_char) {
                    if (text_.substr(pos_, 2) == sym) {
                        advance();
                        advance();
                        token.text = std::string(sym);
                        matched = true;
                        break;
                    }
                }
                if (!matched) {
                    static constexpr std::string_view singles = "(),.;=<>+-*/%";
                    if (singles.find(c) == std::string_view::npos)
                        throw SyntaxError(std::string("unexpected character '") + c + "'", line_, column_);
                    advance();
                    token.text = std::string(1, c);
                }
            }
            token.length = pos_ - token.offset;
            tokens.push_back(std::move(token));
        }
    }

private:
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_trivia()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (text_.substr(pos_, 2) == "--") {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (text_.substr(pos_, 2) == "/*") {
                std::size_t line = line_, column = column_;
                advance();
                advance();
                while (pos_ < text_.size() && text_.substr(pos_, 2) != "*/")
                    advance();
                if (pos_ >= text_.size())
                    throw SyntaxError("unterminated comment", line, column);
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    // Reads a quote-delimited run where a doubled quote escapes itself.
    std::string delimited(char quote, const Token& start, const char* error)
    {
        std::string out;
        advance();
        while (true) {
            if (pos_ >= text_.size())
                throw SyntaxError(error, start.line, start.column);
            if (text_[pos_] == quote) {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == quote) {
                    out.push_back(quote);
                    advance();
                    advance();
                    continue;
                }
                advance();
                return out;
            }
            out.push_back(text_[pos_]);
            advance();
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view text)
{
    return Lexer(text).run();
}

} // namespace refactordb
