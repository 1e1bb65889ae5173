// frobforge run <session> [--json <out>] [--order lex|grevlex] [--max-stage N] [--tor-bound L] [--step-budget N]
//
// Exit codes: 0 every command ran, 1 usage, 2 parse or engine error.

#include "frobforge/errors.hpp"
#include "frobforge/workbench/runner.hpp"
#include "frobforge/workbench/session.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace wb = frobforge::workbench;

namespace {

int run(const std::string& path, const std::string& json_out, const wb::RunOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "frobforge: cannot read " << path << "\n";
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();

    wb::Session session;
    try {
        session = wb::parse_session(text.str());
    } catch (const frobforge::ParseError& e) {
        std::cerr << path << ":" << e.what() << "\n";
        return 2;
    }

    std::vector<wb::Report> reports = wb::run_session(session, options);

    if (json_out == "-") {
        std::cout << wb::emit_session(reports, wb::ReportFormat::json, options);
    } else {
        std::cout << wb::emit_session(reports, wb::ReportFormat::text, options);
        if (!json_out.empty()) {
            std::ofstream out(json_out, std::ios::binary);
            out << wb::emit_session(reports, wb::ReportFormat::json, options);
            if (!out) {
                std::cerr << "frobforge: cannot write " << json_out << "\n";
                return 1;
            }
        }
    }

    int status = 0;
    for (const wb::Report& r : reports) {
        if (r.error) {
            std::cerr << path << ":" << r.location.line << ":" << r.location.column << ": " << r.command << ": "
                      << r.error->module << " " << r.error->kind << " error: " << r.error->message << "\n";
            status = 2;
        }
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"frobforge: relative Frobenius computations over F_p"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(wb::kEngineVersion));

    CLI::App* cmd = app.add_subcommand("run", "Run a session file and print its reports");
    std::string path;
    std::string json_out;
    std::string order = "grevlex";
    wb::RunOptions options;
    cmd->add_option("file", path, "Session file")->required();
    cmd->add_option("--json", json_out, "Also write the JSON report to this file ('-' prints JSON instead of text)");
    cmd->add_option("--order", order, "Monomial order for displayed bases")
        ->check(CLI::IsMember({"lex", "grevlex"}))
        ->capture_default_str();
    cmd->add_option("--max-stage", options.max_stage, "Largest stage index a command may request")
        ->capture_default_str();
    cmd->add_option("--tor-bound", options.tor_bound, "Largest Tor degree computed")->capture_default_str();
    cmd->add_option("--step-budget", options.step_budget, "S-pair budget per Groebner computation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    options.order = order == "lex" ? wb::TermOrder::lex : wb::TermOrder::grevlex;
    return run(path, json_out, options);
}
