#include "frobforge/workbench/text.hpp"

#include "frobforge/errors.hpp"

#include <cctype>
#include <limits>

namespace frobforge::workbench {

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> tokens;
    SourceLocation loc;
    std::size_t i = 0;
    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (text[i] == '\n') {
                ++loc.line;
                loc.column = 1;
            } else {
                ++loc.column;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        SourceLocation start = loc;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tokens.push_back(Token{TokenKind::identifier, std::string(text.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            tokens.push_back(Token{TokenKind::integer, std::string(text.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            tokens.push_back(Token{TokenKind::symbol, "->", start});
            advance(2);
            continue;
        }
        static constexpr std::string_view kSymbols = ";=[]/(),:{}+-*^";
        if (kSymbols.find(c) != std::string_view::npos) {
            tokens.push_back(Token{TokenKind::symbol, std::string(1, c), start});
            advance(1);
            continue;
        }
        throw ParseError(start.line, start.column, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back(Token{TokenKind::end, "", loc});
    return tokens;
}

const Token& TokenStream::peek(std::size_t ahead) const
{
    std::size_t idx = pos_ + ahead;
    return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

const Token& TokenStream::next()
{
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1)
        ++pos_;
    return t;
}

bool TokenStream::at_symbol(std::string_view s) const
{
    return peek().kind == TokenKind::symbol && peek().text == s;
}

bool TokenStream::at_keyword(std::string_view word) const
{
    return peek().kind == TokenKind::identifier && peek().text == word;
}

void TokenStream::fail(const std::string& expectation) const
{
    const Token& t = peek();
    std::string found = t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.location.line, t.location.column, "expected " + expectation + ", found " + found);
}

const Token& TokenStream::expect_symbol(std::string_view s)
{
    if (!at_symbol(s))
        fail("'" + std::string(s) + "'");
    return next();
}

const Token& TokenStream::expect(TokenKind kind, std::string_view what)
{
    if (peek().kind != kind)
        fail(std::string(what));
    return next();
}

namespace {

Coeff parse_coefficient(const Token& t, const PrimeField& field)
{
    std::uint64_t value = 0;
    for (char c : t.text)
        value = (value * 10 + static_cast<std::uint64_t>(c - '0')) % field.characteristic();
    return static_cast<Coeff>(value);
}

Polynomial parse_sum(TokenStream& ts, const RingPtr& ring);

Polynomial parse_atom(TokenStream& ts, const RingPtr& ring)
{
    const Token& t = ts.peek();
    if (t.kind == TokenKind::integer) {
        ts.next();
        return Polynomial::constant(ring, parse_coefficient(t, ring->field()));
    }
    if (t.kind == TokenKind::identifier) {
        auto idx = ring->index_of(t.text);
        if (!idx)
            throw ParseError(t.location.line, t.location.column, "unknown variable '" + t.text + "'");
        ts.next();
        return Polynomial::variable(ring, *idx);
    }
    if (ts.at_symbol("(")) {
        ts.next();
        Polynomial inner = parse_sum(ts, ring);
        ts.expect_symbol(")");
        return inner;
    }
    ts.fail("a polynomial (number, variable or parenthesis)");
}

Polynomial parse_power(TokenStream& ts, const RingPtr& ring)
{
    Polynomial base = parse_atom(ts, ring);
    if (!ts.at_symbol("^"))
        return base;
    ts.next();
    const Token& e = ts.expect(TokenKind::integer, "an integer exponent");
    if (e.text.size() > 9)
        throw ParseError(e.location.line, e.location.column, "exponent too large");
    return base.pow(std::stoull(e.text));
}

Polynomial parse_unary(TokenStream& ts, const RingPtr& ring)
{
    if (ts.at_symbol("-")) {
        ts.next();
        return -parse_unary(ts, ring);
    }
    return parse_power(ts, ring);
}

Polynomial parse_product(TokenStream& ts, const RingPtr& ring)
{
    Polynomial acc = parse_unary(ts, ring);
    while (ts.at_symbol("*")) {
        ts.next();
        acc *= parse_unary(ts, ring);
    }
    return acc;
}

Polynomial parse_sum(TokenStream& ts, const RingPtr& ring)
{
    Polynomial acc = parse_product(ts, ring);
    while (ts.at_symbol("+") || ts.at_symbol("-")) {
        bool minus = ts.next().text == "-";
        Polynomial rhs = parse_product(ts, ring);
        if (minus)
            acc -= rhs;
        else
            acc += rhs;
    }
    return acc;
}

} // namespace

Polynomial parse_polynomial(TokenStream& tokens, const RingPtr& ring)
{
    return parse_sum(tokens, ring);
}

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text)
{
    TokenStream ts(tokenize(text));
    Polynomial p = parse_sum(ts, ring);
    if (!ts.at_end())
        ts.fail("end of polynomial");
    return p;
}

} // namespace frobforge::workbench
