#pragma once

// Command-line front end: argument parsing, suite execution and text/JSON
// reports.

#include "moufang/check_result.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moufang {

enum class OutputFormat { text, json };

struct RunConfig {
    // Built-in name, "file:<path>" for a polynomial law, or "constants:<path>"
    // for a tensor export (tangent-algebra checks only).
    std::string model = "octonion_chart";
    int order = 4;
    std::vector<std::string> checks{"all"};
    OutputFormat output = OutputFormat::text;
    std::optional<std::filesystem::path> export_tensors;
    unsigned jobs = 1;
    // Set for --version and --help; the caller prints it and exits 0.
    std::optional<std::string> early_exit_text;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws UsageError on unknown flags, a bad order, an unknown check name or a
// missing model file.
RunConfig parse_args(const std::vector<std::string>& args);

struct Report {
    RunConfig config;
    std::string version;
    std::vector<std::string> resolved_checks;
    std::vector<std::string> skipped_checks;
    std::vector<CheckResult> results;
    double total_seconds = 0.0;
    bool overall_pass = true;
};

std::string tool_version();

// Throws UsageError for inputs that cannot be run (e.g. a custom law that
// violates the unit law).
Report run_report(const RunConfig& config);

nlohmann::ordered_json report_json(const Report& report);
std::string emit_report(const Report& report, OutputFormat format);

// Full CLI behaviour; returns the exit status (0 pass, 1 fail, 2 usage).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace moufang
