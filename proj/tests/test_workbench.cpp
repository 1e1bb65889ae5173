#include "frobforge/errors.hpp"
#include "frobforge/oracle.hpp"
#include "frobforge/workbench/runner.hpp"
#include "frobforge/workbench/session.hpp"

#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

using namespace frobforge;
using namespace frobforge::workbench;
using json = nlohmann::ordered_json;

namespace {

std::string read_data(const std::string& name)
{
    std::ifstream in(std::string(FROBFORGE_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// Message of the ParseError raised by `text`, as "line:col: message".
std::string parse_failure(const std::string& text)
{
    try {
        parse_session(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "<parsed>";
}

Report run_single(const std::string& text, const RunOptions& options = {})
{
    Session s = parse_session(text);
    std::vector<Report> reports = run_session(s, options);
    REQUIRE(reports.size() == 1);
    return reports.front();
}

const char* kSurjection = "p 2; ring P = [x]; ring Q = [x]/(x^2); map f : P -> Q = { x -> x };\n";
const char* kFixed = "p 2; ring E = [e]/(e^2+e); ring K = []; map g : E -> K = { e -> 0 };\n";

} // namespace

TEST_CASE("session parsing examples")
{
    Session one = parse_session("p 2; ring R = [x]/(x^2);");
    REQUIRE(one.statements.size() == 2);
    const auto& ring = std::get<RingDecl>(one.statements[1]);
    CHECK(ring.name == "R");
    CHECK(ring.algebra.characteristic() == 2);
    CHECK(ring.location.line == 1);
    CHECK(ring.location.column == 6);

    Session with_map = parse_session("p 2; ring R = [x]; ring S = [y];\nmap f : R -> S = { x -> 0 };");
    REQUIRE(with_map.statements.size() == 4);
    const auto& m = std::get<MapDecl>(with_map.statements[3]);
    CHECK(m.domain == "R");
    CHECK(m.codomain == "S");
    CHECK(m.map.images().front().is_zero());
    CHECK(m.location.line == 2);

    Session cmds = parse_session(std::string(kSurjection) + "tower f 2; stab P (x, x^2) 3; tor f f 1;");
    const auto& tower = std::get<Command>(cmds.statements[4]);
    CHECK(tower.kind == CommandKind::tower);
    CHECK(tower.count == 2u);
    const auto& stab = std::get<Command>(cmds.statements[5]);
    CHECK(stab.polys.size() == 2);
    CHECK(std::get<Command>(cmds.statements[6]).names == std::vector<std::string>{"f", "f"});

    // Empty variable lists and trailing commas.
    CHECK_NOTHROW(parse_session("p 3; ring K = []; ring A = [u, v]; map i : K -> A = {}; "
                                "map s : A -> A = { u -> v, v -> u, };"));
}

TEST_CASE("session errors carry positions and one-line expectations")
{
    CHECK(parse_failure("ring R = [x];") == "1:1: prime p must be declared first");
    CHECK(parse_failure("p 2;\nring R = [x];\nring R = [y];") == "3:6: duplicate name 'R'");
    CHECK(parse_failure("p 2; ring R = [x]; map f : R -> S = { x -> x };") == "1:33: unknown ring 'S'");
    CHECK(parse_failure("p 2; ring R = [x]; gb T;") == "1:23: unknown ring 'T'");
    CHECK(parse_failure("p 2; p 3;") == "1:6: prime redeclaration: p is already 2");
    CHECK(parse_failure("p 4;") == parse_failure("p 4;"));
    CHECK(parse_failure("p 4;").rfind("1:3: ", 0) == 0);
    CHECK(parse_failure("p 2; ring R = [x] gb R;") == "1:19: expected ';', found 'gb'");
    CHECK(parse_failure("p 2; ring R = [x, x];") == "1:19: duplicate variable 'x'");
    CHECK(parse_failure("p 2; ring R = [x]; ring S = [y]; map f : R -> S = { x -> z };") ==
          "1:58: unknown variable 'z'");
    CHECK(parse_failure("p 2; ring R = [x, y]; map f : R -> R = { x -> y };").find("missing image for variable 'y'") !=
          std::string::npos);
    CHECK(parse_failure("p 2; ring R = [x]; map f : R -> R = { x -> x, x -> 1 };")
              .find("variable 'x' is assigned twice") != std::string::npos);
    CHECK(parse_failure("p 2; ring R = [x]; ring S = [y]/(y); map f : S -> R = { y -> x };")
              .find("not well defined") != std::string::npos);
    CHECK(parse_failure("p 2; ring R = [x]; map f : R -> R = { x -> x }; check smooth f;")
              .find("expected 'semiperfect', 'perfect' or 'iso'") != std::string::npos);
    CHECK(parse_failure("p 2; ring R = [x]; map f : R -> R = { x -> x }; gb f;") == "1:52: 'f' is a map, expected a ring");
    CHECK(parse_failure("p 2; frobnicate;") == "1:6: expected a statement (p, ring, map or a command), found 'frobnicate'");

    // Every error message fits on one line.
    for (const char* bad : {"p", "p 2; ring", "p 2; ring R = [x]/(", "p 2; ring R = [x]; tower", "p 2; map"}) {
        std::string msg = parse_failure(bad);
        CHECK(msg != "<parsed>");
        CHECK(msg.find('\n') == std::string::npos);
    }
}

TEST_CASE("sessions round-trip through the printer")
{
    for (const char* name : {"corpus_p2.ff", "corpus_p5.ff"}) {
        Session s = parse_session(read_data(name));
        std::string printed = print_session(s);
        Session again = parse_session(printed);
        CHECK(same_session(s, again));
        CHECK(print_session(again) == printed);
    }
    Session s = parse_session(std::string(kSurjection) + "cofinal P (x^3 + x, 1) 2;");
    CHECK(print_session(s) ==
          "p 2;\nring P = [x];\nring Q = [x]/(x^2);\nmap f : P -> Q = { x -> x };\ncofinal P (x^3 + x, 1) 2;\n");

    Session other = parse_session(std::string(kSurjection) + "cofinal P (x^3, 1) 2;");
    CHECK_FALSE(same_session(s, other));
}

TEST_CASE("environment resolves names in declaration order")
{
    Environment env = environment_of(parse_session(kSurjection));
    REQUIRE(env.field);
    CHECK(env.field->characteristic() == 2);
    CHECK(env.ring("Q").relations().generators().size() == 1);
    CHECK(env.map("f").codomain().num_vars() == 1);
    CHECK_THROWS_AS(env.ring("f"), PreconditionError);
    CHECK_THROWS_AS(env.map("nope"), PreconditionError);
}

TEST_CASE("run_command examples")
{
    Report semi = run_single(std::string(kSurjection) + "check semiperfect f;");
    CHECK(semi.ok());
    CHECK(semi.result["semiperfect"] == true);

    // Tower of (x^2): the x^4- and x^8-quotients.
    Report tower = run_single(std::string(kSurjection) + "tower f 2;");
    REQUIRE(tower.ok());
    const json& stages = tower.result["stages"];
    REQUIRE(stages.size() == 3);
    PrimeField f2(2);
    for (std::size_t n = 0; n <= 2; ++n) {
        FPAlgebra stage = parse_algebra(f2, stages[n]["stage"]["text"].get<std::string>());
        CHECK(enumerate_algebra(stage).dimension() == (std::size_t{2} << n));
        CHECK(stages[n]["transition"].is_null() == (n == 0));
    }
    FPAlgebra x8 = parse_algebra(f2, "[z]/(z^8)");
    FPAlgebra stage2 = parse_algebra(f2, stages[2]["stage"]["text"].get<std::string>());
    CHECK(is_isomorphism(AlgebraMap(x8, stage2, {Polynomial::variable(stage2.ring(), 1)})).is_isomorphism());

    // F_2[e]/(e^2+e) → F_2 factors through exactly T = F_2.
    Report fac = run_single(std::string(kFixed) + "factorize g 4;");
    REQUIRE(fac.ok());
    CHECK(fac.result["valid"] == true);
    CHECK(fac.result["stabilized"] == true);
    CHECK(fac.result["middle_dimension"] == 1);
    FPAlgebra middle = parse_algebra(f2, fac.result["middle"]["text"].get<std::string>());
    CHECK(enumerate_algebra(middle).dimension() == 1);
    CHECK(fac.result["second"]["codomain"] == "[]");
}

TEST_CASE("every command kind runs on the corpus")
{
    Session s = parse_session(read_data("corpus_p2.ff"));
    std::vector<Report> reports = run_session(s, RunOptions{});
    std::size_t commands = 0;
    for (const Statement& st : s.statements)
        commands += std::holds_alternative<Command>(st);
    REQUIRE(reports.size() == commands);
    for (const Report& r : reports) {
        INFO(r.command);
        CHECK(r.ok());
    }
    auto find = [&](const std::string& echo) -> const Report& {
        for (const Report& r : reports)
            if (r.command == echo)
                return r;
        FAIL("no report for " << echo);
        return reports.front();
    };
    CHECK(find("gb Q").result["basis"] == json::array({"x^2"}));
    CHECK(find("check semiperfect d").result["semiperfect"] == false);
    CHECK(find("check perfect h").result["perfect"] == true);
    CHECK(find("check perfect as").result["perfect"] == true);
    CHECK(find("check perfect as").result["tor_independent"] == true);
    CHECK(find("check iso f").result["isomorphism"] == false);
    CHECK(find("check iso f").result["surjective"] == true);
    CHECK(find("relfrob as").result["isomorphism"] == true);
    CHECK(find("factorize d 2").result["valid"] == true);
    CHECK(find("factorize d 2").result["stabilized"] == false);
    CHECK(find("pbasis free").result["basis"] == json::array({"x", "y"}));
    CHECK(find("stab E (e) 2").result["stage"] == 0);
    CHECK(find("stab A (x*y) 2").result["stabilized"] == false);
    CHECK(find("cofinal A (x, y) 1").result["m"] == 3);

    // Tor^{F_2[x]}(F_2[x]/(x^2), F_2[x]/(x^2)) has dimensions 2, 2, 0.
    const json& tor = find("tor f f 2").result["groups"];
    REQUIRE(tor.size() == 3);
    CHECK(tor[0]["dimension"] == 2);
    CHECK(tor[1]["dimension"] == 2);
    CHECK(tor[2]["dimension"] == 0);

    Session cusp = parse_session(read_data("corpus_p5.ff"));
    std::vector<Report> cr = run_session(cusp, RunOptions{});
    REQUIRE(cr.size() == 4);
    CHECK(cr[0].result["found"] == false);
    CHECK(cr[0].result["fitting_index"] == 1);
    FPAlgebra c5 = parse_algebra(PrimeField(5), "[x, y]");
    CHECK(ideal_equal(Ideal(c5.ring(), {parse_polynomial(c5.ring(), "x^2"), parse_polynomial(c5.ring(), "y"),
                                        parse_polynomial(c5.ring(), "y^2 - x^3")}),
                      [&] {
                          std::vector<Polynomial> gens{parse_polynomial(c5.ring(), "y^2 - x^3")};
                          for (const auto& g : cr[0].result["fitting_ideal"]["generators"])
                              gens.push_back(parse_polynomial(c5.ring(), g.get<std::string>()));
                          return Ideal(c5.ring(), gens);
                      }()));
    CHECK(cr[1].result["basis"] == json::array({"x", "y"}));
}

TEST_CASE("order option selects the displayed basis")
{
    std::string text = "p 3; ring R = [x, y]/(x^2 - y, y^2 - x); gb R;";
    RunOptions lex;
    lex.order = TermOrder::lex;
    Report a = run_single(text, lex);
    Report b = run_single(text, RunOptions{});
    CHECK(a.result["order"] == "lex");
    CHECK(b.result["order"] == "grevlex");
    CHECK(a.result["dimension"] == b.result["dimension"]);
    CHECK(a.result["dimension"] == 4);
}

TEST_CASE("failures are structured reports")
{
    RunOptions tight;
    tight.max_stage = 1;
    Report capped = run_single(std::string(kSurjection) + "tower f 2;", tight);
    REQUIRE(capped.error);
    CHECK(capped.error->kind == "precondition");
    CHECK(capped.error->module == "workbench");

    Report bad_base = run_single(std::string(kFixed) + "cofinal E (e) 1;");
    REQUIRE(bad_base.error);
    CHECK(bad_base.error->kind == "precondition");
    CHECK(bad_base.error->module == "tower");

    RunOptions starved;
    starved.step_budget = 1;
    Report resource = run_single("p 2; ring R = [x, y, z]/(x^2 + y*z, y^2 + x*z, z^2 + x*y); gb R;", starved);
    REQUIRE(resource.error);
    CHECK(resource.error->kind == "resource");
    CHECK(step_budget() == kDefaultStepBudget);

    Report tor_cap = run_single(std::string(kSurjection) + "tor f f 5;");
    REQUIRE(tor_cap.error);
    CHECK(tor_cap.error->kind == "precondition");

    json doc = report_json(capped, tight);
    CHECK(doc["status"] == "error");
    CHECK(doc["error"]["kind"] == "precondition");
    CHECK(emit_report(capped, ReportFormat::text, tight).find("error [workbench/precondition]") != std::string::npos);
}

TEST_CASE("JSON reports follow the published schema")
{
    Session s = parse_session(read_data("corpus_p2.ff"));
    RunOptions options;
    std::vector<Report> reports = run_session(s, options);
    json doc = session_json(reports, options);
    CHECK(validate_session_json(doc).empty());
    CHECK(doc["schema"] == std::string(kReportSchema));

    for (const json& r : doc["reports"])
        for (const char* key : {"command", "inputs", "result", "resources", "version"})
            CHECK(r.contains(key));

    // Round trip through the serialized bytes.
    json reparsed = json::parse(emit_session(reports, ReportFormat::json, options));
    CHECK(reparsed == doc);

    json broken = doc;
    broken["reports"][0].erase("resources");
    broken["reports"][1]["status"] = "maybe";
    broken["schema"] = "frobforge-report/0";
    CHECK(validate_session_json(broken).size() == 3);
}

TEST_CASE("presentations in reports re-parse to equal objects")
{
    Session s = parse_session(read_data("corpus_p2.ff"));
    std::vector<Report> reports = run_session(s, RunOptions{});
    PrimeField f2(2);
    std::size_t maps = 0;
    std::size_t algebras = 0;
    std::function<void(const json&)> visit = [&](const json& v) {
        if (v.is_object() && v.contains("domain") && v.contains("codomain") && v.contains("images")) {
            AlgebraMap m = map_from_json(f2, v);
            CHECK(map_json(m) == v);
            ++maps;
        } else if (v.is_object() && v.contains("text") && v.contains("vars") && v.contains("relations")) {
            FPAlgebra a = parse_algebra(f2, v["text"].get<std::string>());
            CHECK(algebra_json(a) == v);
            ++algebras;
        }
        if (v.is_structured())
            for (const auto& item : v)
                visit(item);
    };
    for (const Report& r : reports) {
        visit(r.inputs);
        visit(r.result);
    }
    CHECK(maps >= 20);
    CHECK(algebras >= 10);
}

TEST_CASE("reports are deterministic")
{
    std::string text = read_data("corpus_p2.ff");
    RunOptions options;
    std::string first_json = emit_session(run_session(parse_session(text), options), ReportFormat::json, options);
    std::string second_json = emit_session(run_session(parse_session(text), options), ReportFormat::json, options);
    CHECK(first_json == second_json);
    std::string first_text = emit_session(run_session(parse_session(text), options), ReportFormat::text, options);
    std::string second_text = emit_session(run_session(parse_session(text), options), ReportFormat::text, options);
    CHECK(first_text == second_text);
}

TEST_CASE("text reports put verdicts first")
{
    Report r = run_single(std::string(kSurjection) + "check perfect f;");
    std::string text = emit_report(r, ReportFormat::text, RunOptions{});
    CHECK(text.rfind("== check perfect f  (line 2)\n  perfect: ", 0) == 0);
    CHECK(text.find("resources:") != std::string::npos);
}
