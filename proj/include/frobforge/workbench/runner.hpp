#pragma once

// Command execution and reports. Reports are JSON documents under the schema
// "frobforge-report/1"; the text format renders the same data.

#include "frobforge/groebner.hpp"
#include "frobforge/tower.hpp"
#include "frobforge/workbench/session.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frobforge::workbench {

inline constexpr std::string_view kReportSchema = "frobforge-report/1";
inline constexpr std::string_view kEngineVersion = "0.1.0";

enum class TermOrder { lex, grevlex };
std::string_view order_name(TermOrder order);

struct RunOptions {
    TermOrder order = TermOrder::grevlex; // order of the bases shown by gb
    std::size_t max_stage = kDefaultMaxStage;
    std::size_t tor_bound = 3;
    std::size_t step_budget = kDefaultStepBudget;
};

struct ReportError {
    std::string module;
    std::string kind;
    std::string message;
};

struct Report {
    std::string command; // canonical echo of the command
    SourceLocation location;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    nlohmann::ordered_json result = nlohmann::ordered_json::object();
    ResourceUsage resources;
    std::optional<ReportError> error;

    bool ok() const noexcept { return !error; }
};

// Never throws for engine failures; they are recorded in Report::error.
Report run_command(const Command& command, const Environment& env, const RunOptions& options);
// Runs every command in order. Sets the process-wide step budget from the options.
std::vector<Report> run_session(const Session& session, const RunOptions& options);

enum class ReportFormat { json, text };

nlohmann::ordered_json report_json(const Report& report, const RunOptions& options);
// One document for a whole session: {schema, version, order, options, reports}.
nlohmann::ordered_json session_json(const std::vector<Report>& reports, const RunOptions& options);

std::string emit_report(const Report& report, ReportFormat format, const RunOptions& options);
std::string emit_session(const std::vector<Report>& reports, ReportFormat format, const RunOptions& options);

// Presentations as they appear in reports.
nlohmann::ordered_json algebra_json(const FPAlgebra& algebra);
nlohmann::ordered_json map_json(const AlgebraMap& map);
nlohmann::ordered_json ideal_json(const Ideal& ideal);

// Inverse of map_json, for round-trip checks.
AlgebraMap map_from_json(const PrimeField& field, const nlohmann::ordered_json& json);

// Problems found by validate_session_json; empty when the document conforms.
std::vector<std::string> validate_session_json(const nlohmann::ordered_json& document);

} // namespace frobforge::workbench
