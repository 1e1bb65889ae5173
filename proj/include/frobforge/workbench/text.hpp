#pragma once

// Lexer and polynomial expression parser for the session language.
//
//   poly  := term {("+" | "-") term}
//   term  := unary {"*" unary}
//   unary := "-" unary | power
//   power := atom ["^" INT]
//   atom  := INT | NAME | "(" poly ")"
//
// Integer literals are reduced mod p; `#` starts a comment running to end of line.

#include "frobforge/polyring.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace frobforge::workbench {

struct SourceLocation {
    std::size_t line = 1;
    std::size_t column = 1;

    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class TokenKind {
    identifier,
    integer,
    symbol, // one of ; = [ ] / ( ) , : { } + - * ^ and the arrow ->
    end,
};

struct Token {
    TokenKind kind;
    std::string text;
    SourceLocation location;
};

// Throws ParseError on characters outside the language.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_symbol(std::string_view s) const;
    bool at_keyword(std::string_view word) const;
    bool at_end() const { return peek().kind == TokenKind::end; }
    // Consumes the symbol or throws ParseError("expected ...").
    const Token& expect_symbol(std::string_view s);
    const Token& expect(TokenKind kind, std::string_view what);
    [[noreturn]] void fail(const std::string& expectation) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

Polynomial parse_polynomial(TokenStream& tokens, const RingPtr& ring);
// Whole-string convenience; trailing tokens are an error.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

} // namespace frobforge::workbench
