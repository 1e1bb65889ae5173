#pragma once

// Session language:
//
//   session := {stmt ";"}
//   stmt    := "p" INT
//            | "ring" NAME "=" "[" [NAME {"," NAME}] "]" ["/" "(" polys ")"]
//            | "map" NAME ":" NAME "->" NAME "=" "{" [NAME "->" poly {"," NAME "->" poly}] [","] "}"
//            | cmd
//   cmd     := "gb" NAME | "check" ("semiperfect" | "perfect" | "iso") NAME | "relfrob" NAME
//            | "tower" NAME INT | "factorize" NAME INT | "pbasis" NAME | "tor" NAME NAME INT
//            | "stab" NAME "(" polys ")" INT | "cofinal" NAME "(" polys ")" INT
//   polys   := poly {"," poly}
//
// Names are resolved while parsing, so the AST carries ready-made algebras and maps.

#include "frobforge/algebra.hpp"
#include "frobforge/workbench/text.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace frobforge::workbench {

struct PrimeDecl {
    std::uint32_t p = 0;
    SourceLocation location;
};

struct RingDecl {
    std::string name;
    FPAlgebra algebra;
    SourceLocation location;
};

struct MapDecl {
    std::string name;
    std::string domain;
    std::string codomain;
    AlgebraMap map;
    SourceLocation location;
};

enum class CommandKind {
    gb,
    check_semiperfect,
    check_perfect,
    check_iso,
    relfrob,
    tower,
    factorize,
    pbasis,
    tor,
    stab,
    cofinal,
};

struct Command {
    CommandKind kind;
    std::vector<std::string> names;
    std::vector<Polynomial> polys; // ideal generators for stab and cofinal
    std::optional<std::uint64_t> count;
    SourceLocation location;
};

using Statement = std::variant<PrimeDecl, RingDecl, MapDecl, Command>;

struct Session {
    std::vector<Statement> statements;
};

// Rings and maps declared so far, by name.
struct Environment {
    std::optional<PrimeField> field;
    std::map<std::string, FPAlgebra> rings;
    std::map<std::string, AlgebraMap> maps;

    const FPAlgebra& ring(const std::string& name) const;
    const AlgebraMap& map(const std::string& name) const;
};

// Throws ParseError with line and column on any syntax or resolution problem.
Session parse_session(std::string_view text);
Environment environment_of(const Session& session);

// Canonical source text; parse_session(print_session(s)) reproduces s.
std::string print_session(const Session& session);
std::string print_statement(const Statement& statement);
std::string command_name(CommandKind kind);

// Structural equality ignoring source locations.
bool same_session(const Session& a, const Session& b);

// "[x, y]/(x^2, y)" over the given field, as printed by FPAlgebra::to_string.
FPAlgebra parse_algebra(const PrimeField& field, std::string_view text);

} // namespace frobforge::workbench
