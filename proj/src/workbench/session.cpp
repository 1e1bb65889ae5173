#include "frobforge/workbench/session.hpp"

#include "frobforge/errors.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace frobforge::workbench {

namespace {

[[noreturn]] void fail_at(const SourceLocation& at, const std::string& message)
{
    throw ParseError(at.line, at.column, message);
}

std::uint64_t parse_count(TokenStream& ts, std::string_view what)
{
    const Token& t = ts.expect(TokenKind::integer, what);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        fail_at(t.location, "integer " + t.text + " is too large");
    return value;
}

std::vector<Polynomial> parse_polys(TokenStream& ts, const RingPtr& ring)
{
    std::vector<Polynomial> out;
    ts.expect_symbol("(");
    out.push_back(parse_polynomial(ts, ring));
    while (ts.at_symbol(",")) {
        ts.next();
        out.push_back(parse_polynomial(ts, ring));
    }
    ts.expect_symbol(")");
    return out;
}

// "[" vars "]" ["/" "(" polys ")"]
FPAlgebra parse_presentation(TokenStream& ts, const PrimeField& field)
{
    ts.expect_symbol("[");
    std::vector<std::string> names;
    std::set<std::string> seen;
    if (!ts.at_symbol("]")) {
        while (true) {
            const Token& v = ts.expect(TokenKind::identifier, "a variable name");
            if (!seen.insert(v.text).second)
                fail_at(v.location, "duplicate variable '" + v.text + "'");
            names.push_back(v.text);
            if (!ts.at_symbol(","))
                break;
            ts.next();
        }
    }
    ts.expect_symbol("]");
    RingPtr ring = PolyRing::make(field, names);
    std::vector<Polynomial> rels;
    if (ts.at_symbol("/")) {
        ts.next();
        rels = parse_polys(ts, ring);
    }
    return FPAlgebra(ring, std::move(rels));
}

class Parser {
public:
    explicit Parser(std::string_view text) : ts_(tokenize(text)) {}

    Session run()
    {
        Session session;
        while (!ts_.at_end()) {
            session.statements.push_back(statement());
            ts_.expect_symbol(";");
        }
        return session;
    }

private:
    Statement statement()
    {
        const Token& head = ts_.peek();
        if (head.kind != TokenKind::identifier)
            ts_.fail("a statement");
        SourceLocation at = head.location;
        std::string word = head.text;
        if (word == "p")
            return prime(at);
        if (word == "ring")
            return ring(at);
        if (word == "map")
            return map(at);
        return command(at);
    }

    PrimeDecl prime(const SourceLocation& at)
    {
        ts_.next();
        if (env_.field)
            fail_at(at, "prime redeclaration: p is already " + std::to_string(env_.field->characteristic()));
        const Token& t = ts_.peek();
        std::uint64_t p = parse_count(ts_, "the prime p");
        if (p > 0xFFFFFFFFu)
            fail_at(t.location, "p = " + t.text + " is not a supported prime");
        try {
            env_.field = PrimeField(static_cast<std::uint32_t>(p));
        } catch (const Error& e) {
            fail_at(t.location, e.what());
        }
        return PrimeDecl{static_cast<std::uint32_t>(p), at};
    }

    const PrimeField& field(const SourceLocation& at)
    {
        if (!env_.field)
            fail_at(at, "prime p must be declared first");
        return *env_.field;
    }

    std::string fresh_name(std::string_view what)
    {
        const Token& t = ts_.expect(TokenKind::identifier, what);
        if (env_.rings.count(t.text) || env_.maps.count(t.text))
            fail_at(t.location, "duplicate name '" + t.text + "'");
        return t.text;
    }

    RingDecl ring(const SourceLocation& at)
    {
        ts_.next();
        const PrimeField& k = field(at);
        std::string name = fresh_name("a ring name");
        ts_.expect_symbol("=");
        FPAlgebra algebra = parse_presentation(ts_, k);
        env_.rings.emplace(name, algebra);
        return RingDecl{name, algebra, at};
    }

    std::string known_ring(std::string_view what)
    {
        const Token& t = ts_.expect(TokenKind::identifier, what);
        if (!env_.rings.count(t.text))
            fail_at(t.location, env_.maps.count(t.text) ? "'" + t.text + "' is a map, expected a ring"
                                                        : "unknown ring '" + t.text + "'");
        return t.text;
    }

    std::string known_map(std::string_view what)
    {
        const Token& t = ts_.expect(TokenKind::identifier, what);
        if (!env_.maps.count(t.text))
            fail_at(t.location, env_.rings.count(t.text) ? "'" + t.text + "' is a ring, expected a map"
                                                         : "unknown map '" + t.text + "'");
        return t.text;
    }

    MapDecl map(const SourceLocation& at)
    {
        ts_.next();
        field(at);
        std::string name = fresh_name("a map name");
        ts_.expect_symbol(":");
        std::string dom = known_ring("a domain ring");
        ts_.expect_symbol("->");
        std::string cod = known_ring("a codomain ring");
        ts_.expect_symbol("=");
        const FPAlgebra& domain = env_.rings.at(dom);
        const FPAlgebra& codomain = env_.rings.at(cod);
        std::vector<std::optional<Polynomial>> images(domain.num_vars());
        ts_.expect_symbol("{");
        while (!ts_.at_symbol("}")) {
            const Token& v = ts_.expect(TokenKind::identifier, "a domain variable or '}'");
            auto index = domain.ring()->index_of(v.text);
            if (!index)
                fail_at(v.location, "'" + v.text + "' is not a variable of " + dom);
            if (images[*index])
                fail_at(v.location, "variable '" + v.text + "' is assigned twice");
            ts_.expect_symbol("->");
            images[*index] = parse_polynomial(ts_, codomain.ring());
            if (!ts_.at_symbol(","))
                break;
            ts_.next();
        }
        const Token& close = ts_.expect_symbol("}");
        std::vector<Polynomial> values;
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (!images[i])
                fail_at(close.location, "missing image for variable '" + domain.ring()->name(i) + "'");
            values.push_back(*images[i]);
        }
        try {
            AlgebraMap m(domain, codomain, std::move(values));
            env_.maps.emplace(name, m);
            return MapDecl{name, dom, cod, m, at};
        } catch (const Error& e) {
            fail_at(at, "map " + name + ": " + e.what());
        }
    }

    Command command(const SourceLocation& at)
    {
        const Token& head = ts_.next();
        Command c{CommandKind::gb, {}, {}, std::nullopt, at};
        const std::string& w = head.text;
        if (w == "gb") {
            c.kind = CommandKind::gb;
            c.names.push_back(known_ring("a ring name"));
        } else if (w == "check") {
            const Token& what = ts_.expect(TokenKind::identifier, "'semiperfect', 'perfect' or 'iso'");
            if (what.text == "semiperfect")
                c.kind = CommandKind::check_semiperfect;
            else if (what.text == "perfect")
                c.kind = CommandKind::check_perfect;
            else if (what.text == "iso")
                c.kind = CommandKind::check_iso;
            else
                fail_at(what.location, "expected 'semiperfect', 'perfect' or 'iso', found '" + what.text + "'");
            c.names.push_back(known_map("a map name"));
        } else if (w == "relfrob" || w == "pbasis") {
            c.kind = w == "relfrob" ? CommandKind::relfrob : CommandKind::pbasis;
            c.names.push_back(known_map("a map name"));
        } else if (w == "tower" || w == "factorize") {
            c.kind = w == "tower" ? CommandKind::tower : CommandKind::factorize;
            c.names.push_back(known_map("a map name"));
            c.count = parse_count(ts_, w == "tower" ? "a stage index" : "a stage budget");
        } else if (w == "tor") {
            c.kind = CommandKind::tor;
            c.names.push_back(known_map("a map name"));
            c.names.push_back(known_map("a map name"));
            c.count = parse_count(ts_, "a Tor degree bound");
        } else if (w == "stab" || w == "cofinal") {
            c.kind = w == "stab" ? CommandKind::stab : CommandKind::cofinal;
            c.names.push_back(known_ring("a ring name"));
            c.polys = parse_polys(ts_, env_.rings.at(c.names[0]).ring());
            c.count = parse_count(ts_, w == "stab" ? "a stage bound" : "a Frobenius exponent");
        } else {
            fail_at(at, "expected a statement (p, ring, map or a command), found '" + w + "'");
        }
        return c;
    }

    TokenStream ts_;
    Environment env_;
};

std::string join_polys(const std::vector<Polynomial>& polys)
{
    std::string out;
    for (std::size_t i = 0; i < polys.size(); ++i)
        out += (i ? ", " : "") + polys[i].to_string();
    return out;
}

} // namespace

const FPAlgebra& Environment::ring(const std::string& name) const
{
    auto it = rings.find(name);
    if (it == rings.end())
        throw PreconditionError("workbench", "unknown ring '" + name + "'");
    return it->second;
}

const AlgebraMap& Environment::map(const std::string& name) const
{
    auto it = maps.find(name);
    if (it == maps.end())
        throw PreconditionError("workbench", "unknown map '" + name + "'");
    return it->second;
}

Session parse_session(std::string_view text) { return Parser(text).run(); }

Environment environment_of(const Session& session)
{
    Environment env;
    for (const Statement& s : session.statements) {
        if (const auto* p = std::get_if<PrimeDecl>(&s))
            env.field = PrimeField(p->p);
        else if (const auto* r = std::get_if<RingDecl>(&s))
            env.rings.emplace(r->name, r->algebra);
        else if (const auto* m = std::get_if<MapDecl>(&s))
            env.maps.emplace(m->name, m->map);
    }
    return env;
}

std::string command_name(CommandKind kind)
{
    switch (kind) {
    case CommandKind::gb: return "gb";
    case CommandKind::check_semiperfect: return "check semiperfect";
    case CommandKind::check_perfect: return "check perfect";
    case CommandKind::check_iso: return "check iso";
    case CommandKind::relfrob: return "relfrob";
    case CommandKind::tower: return "tower";
    case CommandKind::factorize: return "factorize";
    case CommandKind::pbasis: return "pbasis";
    case CommandKind::tor: return "tor";
    case CommandKind::stab: return "stab";
    case CommandKind::cofinal: return "cofinal";
    }
    return "?";
}

std::string print_statement(const Statement& statement)
{
    std::ostringstream out;
    if (const auto* p = std::get_if<PrimeDecl>(&statement)) {
        out << "p " << p->p;
    } else if (const auto* r = std::get_if<RingDecl>(&statement)) {
        out << "ring " << r->name << " = " << r->algebra.to_string();
    } else if (const auto* m = std::get_if<MapDecl>(&statement)) {
        out << "map " << m->name << " : " << m->domain << " -> " << m->codomain << " = " << m->map.to_string();
    } else {
        const auto& c = std::get<Command>(statement);
        out << command_name(c.kind);
        for (const std::string& n : c.names)
            out << " " << n;
        if (!c.polys.empty())
            out << " (" << join_polys(c.polys) << ")";
        if (c.count)
            out << " " << *c.count;
    }
    return out.str();
}

std::string print_session(const Session& session)
{
    std::string out;
    for (const Statement& s : session.statements)
        out += print_statement(s) + ";\n";
    return out;
}

bool same_session(const Session& a, const Session& b)
{
    if (a.statements.size() != b.statements.size())
        return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        const Statement& x = a.statements[i];
        const Statement& y = b.statements[i];
        if (x.index() != y.index())
            return false;
        if (const auto* p = std::get_if<PrimeDecl>(&x)) {
            if (p->p != std::get<PrimeDecl>(y).p)
                return false;
        } else if (const auto* r = std::get_if<RingDecl>(&x)) {
            const auto& s = std::get<RingDecl>(y);
            if (r->name != s.name || !same_ring(r->algebra.ring(), s.algebra.ring()) ||
                r->algebra.relations().generators() != s.algebra.relations().generators())
                return false;
        } else if (const auto* m = std::get_if<MapDecl>(&x)) {
            const auto& n = std::get<MapDecl>(y);
            if (m->name != n.name || m->domain != n.domain || m->codomain != n.codomain ||
                !maps_equal(m->map, n.map))
                return false;
        } else {
            const auto& c = std::get<Command>(x);
            const auto& d = std::get<Command>(y);
            if (c.kind != d.kind || c.names != d.names || c.polys != d.polys || c.count != d.count)
                return false;
        }
    }
    return true;
}

FPAlgebra parse_algebra(const PrimeField& field, std::string_view text)
{
    TokenStream ts(tokenize(text));
    FPAlgebra a = parse_presentation(ts, field);
    if (!ts.at_end())
        ts.fail("end of presentation");
    return a;
}

} // namespace frobforge::workbench
