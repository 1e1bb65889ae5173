#include "frobforge/workbench/runner.hpp"

#include "frobforge/errors.hpp"
#include "frobforge/homology.hpp"
#include "frobforge/pipeline.hpp"
#include "frobforge/tower.hpp"

#include <sstream>

namespace frobforge::workbench {

using json = nlohmann::ordered_json;

namespace {

json polys_json(const std::vector<Polynomial>& polys)
{
    json out = json::array();
    for (const Polynomial& f : polys)
        out.push_back(f.to_string());
    return out;
}

json dimension_json(const FPAlgebra& a)
{
    auto dim = vector_space_dimension(ModulePresentation::free(a, 1));
    return dim ? json(*dim) : json("infinite");
}

json tor_json(const TorResult& tor)
{
    json groups = json::array();
    for (const TorGroup& g : tor.groups) {
        json entry;
        entry["degree"] = g.degree;
        entry["dimension"] = g.dimension ? json(*g.dimension) : json(nullptr);
        entry["vanishes"] = g.vanishes ? json(*g.vanishes) : json(nullptr);
        json survivors = json::array();
        for (const ModuleElement& m : g.survivors)
            survivors.push_back(m.to_string());
        entry["survivors"] = std::move(survivors);
        groups.push_back(std::move(entry));
    }
    return groups;
}

json iso_json(const IsomorphismCheck& check)
{
    json out;
    out["isomorphism"] = check.is_isomorphism();
    out["surjective"] = check.surjective;
    out["injective"] = check.injective;
    out["missing"] = check.missing;
    out["kernel_witness"] = polys_json(check.kernel_witness);
    out["inverse"] = check.inverse ? map_json(*check.inverse) : json(nullptr);
    return out;
}

json stabilization_json(const StabilizationReport& r)
{
    json out;
    out["stabilized"] = r.stabilized;
    out["stage"] = r.stage ? json(*r.stage) : json(nullptr);
    out["explored"] = r.explored;
    out["absorbing"] = r.absorbing;
    out["witness"] = r.witness;
    out["failing_element"] = r.failing_element ? json(r.failing_element->to_string()) : json(nullptr);
    return out;
}

std::size_t checked_stage(const Command& c, const RunOptions& options, std::string_view what)
{
    std::uint64_t n = c.count.value_or(0);
    if (n > options.max_stage)
        throw PreconditionError("workbench", std::string(what) + " " + std::to_string(n) +
                                                 " exceeds --max-stage " + std::to_string(options.max_stage));
    return static_cast<std::size_t>(n);
}

json run_gb(const Command& c, const Environment& env, const RunOptions& options, json& inputs)
{
    const FPAlgebra& r = env.ring(c.names[0]);
    inputs["ring"] = algebra_json(r);
    MonomialOrder order = options.order == TermOrder::lex ? MonomialOrder::lex(r.num_vars())
                                                          : MonomialOrder::grevlex(r.num_vars());
    json out;
    out["order"] = order_name(options.order);
    out["basis"] = polys_json(r.relations().reduced_basis(order));
    out["zero_ring"] = r.is_zero_ring();
    out["dimension"] = dimension_json(r);
    return out;
}

json run_semiperfect(const AlgebraMap& f)
{
    SemiperfectVerdict v = is_relatively_semiperfect(f);
    json out;
    out["semiperfect"] = v.semiperfect;
    out["obstruction"] = ideal_json(v.obstruction);
    out["kahler"] = kahler_presentation(f).module.to_string();
    return out;
}

json run_perfect(const AlgebraMap& f, const RunOptions& options)
{
    PerfectnessCertificate cert = is_relatively_perfect(f, options.tor_bound);
    json out;
    out["perfect"] = cert.perfect;
    out["frobenius"] = iso_json(cert.frobenius);
    out["tor_bound"] = cert.tor_bound;
    out["tor_independent"] = cert.tor ? json(cert.tor->independent()) : json(nullptr);
    out["tor"] = cert.tor ? tor_json(*cert.tor) : json(nullptr);
    out["tor_note"] = cert.tor_note;
    return out;
}

json run_relfrob(const AlgebraMap& f)
{
    AlgebraMap phi = relative_frobenius(f);
    json out;
    out["relative_frobenius"] = map_json(phi);
    out["isomorphism"] = is_isomorphism(phi).is_isomorphism();
    return out;
}

json run_tower(const AlgebraMap& f, std::size_t n)
{
    json stages = json::array();
    for (std::size_t k = 0; k <= n; ++k) {
        TowerStage s = tower_stage(f, k);
        json entry;
        entry["index"] = k;
        entry["stage"] = algebra_json(s.stage);
        entry["basis"] = polys_json(s.stage.relations().reduced_basis());
        entry["transition"] = s.transition ? map_json(*s.transition) : json(nullptr);
        stages.push_back(std::move(entry));
    }
    json out;
    out["stages"] = std::move(stages);
    return out;
}

json run_factorize(const AlgebraMap& f, std::size_t budget)
{
    FactorizationCertificate cert = factorize(f, budget);
    json checks;
    checks["composition"] = cert.composition_ok;
    checks["first_free"] = cert.first_free;
    checks["cover_semiperfect"] = cert.cover_semiperfect;
    checks["middle_perfect"] = cert.middle_perfect ? json(*cert.middle_perfect) : json(nullptr);
    checks["truncated_perfect"] = cert.truncated_perfect ? json(*cert.truncated_perfect) : json(nullptr);
    checks["last_surjective"] = cert.last_surjective;

    json stages = json::array();
    for (const FPAlgebra& t : cert.stages)
        stages.push_back(dimension_json(t));

    json out;
    out["valid"] = cert.valid();
    out["stabilized"] = cert.stabilized;
    out["stage"] = cert.stage;
    out["budget"] = cert.budget;
    out["checks"] = std::move(checks);
    out["adjoined"] = cert.cover.adjoined;
    out["first"] = map_json(cert.to_middle);
    out["middle"] = algebra_json(cert.middle);
    out["middle_basis"] = polys_json(cert.middle.relations().reduced_basis());
    out["middle_dimension"] = dimension_json(cert.middle);
    out["second"] = map_json(cert.from_middle);
    out["cover"] = map_json(cert.cover.to_cover);
    out["stage_dimensions"] = std::move(stages);
    return out;
}

json run_pbasis(const AlgebraMap& f)
{
    PBasisResult r = find_p_basis(f);
    json out;
    out["found"] = r.found;
    out["rank"] = r.rank;
    out["basis"] = r.basis;
    out["map"] = r.map ? map_json(*r.map) : json(nullptr);
    out["fitting_index"] = r.fitting_index ? json(*r.fitting_index) : json(nullptr);
    out["fitting_ideal"] = r.fitting_ideal ? ideal_json(*r.fitting_ideal) : json(nullptr);
    out["message"] = r.message;
    return out;
}

// Both maps share a domain R. Tor^R(M, T) with M the pushforward of whichever
// side is module-finite and T the other side.
json run_tor(const AlgebraMap& f, const AlgebraMap& g, std::size_t bound)
{
    if (!same_algebra(f.domain(), g.domain()))
        throw MismatchError("workbench", "tor needs two maps out of the same ring");
    const AlgebraMap* pushed = &f;
    const AlgebraMap* along = &g;
    std::optional<Pushforward> pf = module_finite_pushforward(f);
    if (!pf) {
        pf = module_finite_pushforward(g);
        std::swap(pushed, along);
    }
    if (!pf)
        throw PreconditionError("workbench", "neither map is visibly module-finite");
    TorResult r = tor_along(pf->module, *along, bound);
    json out;
    out["module"] = pf->module.to_string();
    out["module_generators"] = polys_json(pf->generators);
    out["pushed"] = pushed == &f ? "first" : "second";
    out["independent"] = r.independent();
    out["groups"] = tor_json(r);
    return out;
}

json run_stab(const FPAlgebra& r, const Ideal& ideal, std::size_t n)
{
    return stabilization_json(detect_stabilization(r, ideal, n));
}

json run_cofinal(const FPAlgebra& r, const Ideal& ideal, std::size_t n)
{
    std::uint32_t m = cofinality_bound(r, ideal, n);
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < n; ++i)
        q *= r.characteristic();
    json out;
    out["m"] = m;
    out["generators"] = ideal.generators().size();
    out["upper_bound"] = ideal.generators().size() * (q - 1) + 1;
    return out;
}

json resources_json(const ResourceUsage& u)
{
    json out;
    out["groebner_runs"] = u.groebner_runs;
    out["spairs_reduced"] = u.spairs_reduced;
    out["spairs_skipped"] = u.spairs_skipped;
    out["reduction_steps"] = u.reduction_steps;
    return out;
}

json options_json(const RunOptions& options)
{
    json out;
    out["order"] = order_name(options.order);
    out["max_stage"] = options.max_stage;
    out["tor_bound"] = options.tor_bound;
    out["step_budget"] = options.step_budget;
    return out;
}

std::string scalar_text(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void render(std::ostringstream& out, const json& v, const std::string& indent)
{
    for (const auto& [key, value] : v.items()) {
        if (value.is_object() && value.empty()) {
            out << indent << key << ": {}\n";
        } else if (value.is_object()) {
            out << indent << key << ":\n";
            render(out, value, indent + "  ");
        } else if (value.is_array() && !value.empty() && (value.front().is_object() || value.front().is_array())) {
            out << indent << key << ":\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out << indent << "  [" << i << "]\n";
                if (value[i].is_object())
                    render(out, value[i], indent + "    ");
                else
                    out << indent << "    " << value[i].dump() << "\n";
            }
        } else if (value.is_array()) {
            out << indent << key << ": [";
            for (std::size_t i = 0; i < value.size(); ++i)
                out << (i ? ", " : "") << scalar_text(value[i]);
            out << "]\n";
        } else {
            out << indent << key << ": " << scalar_text(value) << "\n";
        }
    }
}

void require(std::vector<std::string>& problems, const json& obj, const std::string& where, const char* key,
             json::value_t type)
{
    if (!obj.is_object() || !obj.contains(key)) {
        problems.push_back(where + ": missing '" + key + "'");
        return;
    }
    const json& v = obj.at(key);
    bool ok = v.type() == type ||
              (type == json::value_t::number_unsigned && v.type() == json::value_t::number_integer);
    if (!ok)
        problems.push_back(where + ": '" + key + "' has type " + v.type_name());
}

} // namespace

std::string_view order_name(TermOrder order) { return order == TermOrder::lex ? "lex" : "grevlex"; }

json algebra_json(const FPAlgebra& algebra)
{
    json out;
    out["text"] = algebra.to_string();
    out["vars"] = algebra.ring()->names();
    out["relations"] = polys_json(algebra.relations().generators());
    return out;
}

json map_json(const AlgebraMap& map)
{
    json out;
    out["domain"] = map.domain().to_string();
    out["codomain"] = map.codomain().to_string();
    json images;
    for (std::size_t i = 0; i < map.images().size(); ++i)
        images[map.domain().ring()->name(i)] = map.images()[i].to_string();
    out["images"] = images.is_null() ? json::object() : std::move(images);
    return out;
}

json ideal_json(const Ideal& ideal)
{
    json out;
    out["generators"] = polys_json(ideal.generators());
    out["unit"] = ideal.is_unit();
    return out;
}

AlgebraMap map_from_json(const PrimeField& field, const json& j)
{
    FPAlgebra dom = parse_algebra(field, j.at("domain").get<std::string>());
    FPAlgebra cod = parse_algebra(field, j.at("codomain").get<std::string>());
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < dom.num_vars(); ++i)
        images.push_back(parse_polynomial(cod.ring(), j.at("images").at(dom.ring()->name(i)).get<std::string>()));
    return AlgebraMap(dom, cod, std::move(images));
}

Report run_command(const Command& c, const Environment& env, const RunOptions& options)
{
    Report report;
    report.command = print_statement(c);
    report.location = c.location;
    reset_resource_usage();
    try {
        json& in = report.inputs;
        auto map_input = [&](std::size_t i) -> const AlgebraMap& {
            const AlgebraMap& f = env.map(c.names[i]);
            in[c.names[i]] = map_json(f);
            return f;
        };
        auto ideal_input = [&]() {
            const FPAlgebra& r = env.ring(c.names[0]);
            in["ring"] = algebra_json(r);
            in["ideal"] = polys_json(c.polys);
            return std::pair<const FPAlgebra&, Ideal>(r, Ideal(r.ring(), c.polys));
        };
        switch (c.kind) {
        case CommandKind::gb:
            report.result = run_gb(c, env, options, in);
            break;
        case CommandKind::check_semiperfect:
            report.result = run_semiperfect(map_input(0));
            break;
        case CommandKind::check_perfect:
            report.result = run_perfect(map_input(0), options);
            break;
        case CommandKind::check_iso:
            report.result = iso_json(is_isomorphism(map_input(0)));
            break;
        case CommandKind::relfrob:
            report.result = run_relfrob(map_input(0));
            break;
        case CommandKind::tower: {
            std::size_t n = checked_stage(c, options, "tower stage");
            report.result = run_tower(map_input(0), n);
            break;
        }
        case CommandKind::factorize: {
            std::size_t n = checked_stage(c, options, "factorize budget");
            report.result = run_factorize(map_input(0), n);
            break;
        }
        case CommandKind::pbasis:
            report.result = run_pbasis(map_input(0));
            break;
        case CommandKind::tor: {
            std::uint64_t bound = c.count.value_or(0);
            if (bound > options.tor_bound)
                throw PreconditionError("workbench", "tor degree " + std::to_string(bound) +
                                                         " exceeds --tor-bound " + std::to_string(options.tor_bound));
            const AlgebraMap& f = map_input(0);
            const AlgebraMap& g = map_input(1);
            report.result = run_tor(f, g, static_cast<std::size_t>(bound));
            break;
        }
        case CommandKind::stab: {
            std::size_t n = checked_stage(c, options, "stabilization bound");
            auto [r, ideal] = ideal_input();
            report.result = run_stab(r, ideal, n);
            break;
        }
        case CommandKind::cofinal: {
            std::size_t n = checked_stage(c, options, "Frobenius exponent");
            auto [r, ideal] = ideal_input();
            report.result = run_cofinal(r, ideal, n);
            break;
        }
        }
    } catch (const Error& e) {
        report.result = json::object();
        report.error = ReportError{e.module(), e.kind(), e.what()};
    } catch (const std::exception& e) {
        report.result = json::object();
        report.error = ReportError{"workbench", "internal", e.what()};
    }
    report.resources = resource_usage();
    return report;
}

std::vector<Report> run_session(const Session& session, const RunOptions& options)
{
    std::size_t saved = step_budget();
    set_step_budget(options.step_budget);
    std::vector<Report> reports;
    Environment env;
    for (const Statement& s : session.statements) {
        if (const auto* p = std::get_if<PrimeDecl>(&s))
            env.field = PrimeField(p->p);
        else if (const auto* r = std::get_if<RingDecl>(&s))
            env.rings.emplace(r->name, r->algebra);
        else if (const auto* m = std::get_if<MapDecl>(&s))
            env.maps.emplace(m->name, m->map);
        else
            reports.push_back(run_command(std::get<Command>(s), env, options));
    }
    set_step_budget(saved);
    return reports;
}

json report_json(const Report& report, const RunOptions& options)
{
    json out;
    out["schema"] = kReportSchema;
    out["version"] = kEngineVersion;
    out["order"] = order_name(options.order);
    out["command"] = report.command;
    json at;
    at["line"] = report.location.line;
    at["column"] = report.location.column;
    out["location"] = std::move(at);
    out["status"] = report.ok() ? "ok" : "error";
    out["inputs"] = report.inputs;
    out["result"] = report.result;
    out["resources"] = resources_json(report.resources);
    if (report.error) {
        json e;
        e["module"] = report.error->module;
        e["kind"] = report.error->kind;
        e["message"] = report.error->message;
        out["error"] = std::move(e);
    } else {
        out["error"] = nullptr;
    }
    return out;
}

json session_json(const std::vector<Report>& reports, const RunOptions& options)
{
    json out;
    out["schema"] = kReportSchema;
    out["version"] = kEngineVersion;
    out["options"] = options_json(options);
    json list = json::array();
    for (const Report& r : reports)
        list.push_back(report_json(r, options));
    out["reports"] = std::move(list);
    return out;
}

std::string emit_report(const Report& report, ReportFormat format, const RunOptions& options)
{
    if (format == ReportFormat::json)
        return report_json(report, options).dump(2) + "\n";

    std::ostringstream out;
    out << "== " << report.command << "  (line " << report.location.line << ")\n";
    if (report.error) {
        out << "error [" << report.error->module << "/" << report.error->kind << "]: " << report.error->message
            << "\n";
        return out.str();
    }
    // Verdicts first, then everything else.
    json verdicts = json::object();
    json rest = json::object();
    for (const auto& [key, value] : report.result.items())
        (value.is_boolean() ? verdicts : rest)[key] = value;
    render(out, verdicts, "  ");
    render(out, rest, "  ");
    const ResourceUsage& u = report.resources;
    out << "  resources: " << u.groebner_runs << " gb runs, " << u.spairs_reduced << " s-pairs reduced, "
        << u.reduction_steps << " reduction steps\n";
    return out.str();
}

std::string emit_session(const std::vector<Report>& reports, ReportFormat format, const RunOptions& options)
{
    if (format == ReportFormat::json)
        return session_json(reports, options).dump(2) + "\n";
    std::string out = "frobforge " + std::string(kEngineVersion) + ", order " +
                      std::string(order_name(options.order)) + "\n";
    for (const Report& r : reports)
        out += emit_report(r, format, options);
    return out;
}

std::vector<std::string> validate_session_json(const json& doc)
{
    using vt = json::value_t;
    std::vector<std::string> problems;
    require(problems, doc, "document", "schema", vt::string);
    require(problems, doc, "document", "version", vt::string);
    require(problems, doc, "document", "options", vt::object);
    require(problems, doc, "document", "reports", vt::array);
    if (doc.contains("schema") && doc["schema"] != kReportSchema)
        problems.push_back("document: unknown schema " + doc["schema"].dump());
    if (!doc.contains("reports") || !doc["reports"].is_array())
        return problems;
    for (std::size_t i = 0; i < doc["reports"].size(); ++i) {
        const json& r = doc["reports"][i];
        std::string where = "reports[" + std::to_string(i) + "]";
        require(problems, r, where, "schema", vt::string);
        require(problems, r, where, "version", vt::string);
        require(problems, r, where, "order", vt::string);
        require(problems, r, where, "command", vt::string);
        require(problems, r, where, "location", vt::object);
        require(problems, r, where, "status", vt::string);
        require(problems, r, where, "inputs", vt::object);
        require(problems, r, where, "result", vt::object);
        require(problems, r, where, "resources", vt::object);
        if (!r.is_object() || !r.contains("status"))
            continue;
        if (r["status"] == "ok") {
            if (!r.contains("error") || !r["error"].is_null())
                problems.push_back(where + ": ok report carries an error");
        } else if (r["status"] == "error") {
            require(problems, r, where, "error", vt::object);
            if (r.contains("error") && r["error"].is_object()) {
                require(problems, r["error"], where + ".error", "module", vt::string);
                require(problems, r["error"], where + ".error", "kind", vt::string);
                require(problems, r["error"], where + ".error", "message", vt::string);
            }
        } else {
            problems.push_back(where + ": status must be ok or error");
        }
        if (r.contains("resources") && r["resources"].is_object())
            for (const char* key : {"groebner_runs", "spairs_reduced", "spairs_skipped", "reduction_steps"})
                require(problems, r["resources"], where + ".resources", key, vt::number_unsigned);
    }
    return problems;
}

} // namespace frobforge::workbench
