#include "moufang/report.hpp"

#include "moufang/loop_models.hpp"
#include "moufang/tangent_algebra.hpp"
#include "moufang/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifndef MOUFANG_VERSION
#define MOUFANG_VERSION "0.0.0"
#endif

namespace moufang {

namespace {

constexpr std::string_view kFilePrefix = "file:";
constexpr std::string_view kConstantsPrefix = "constants:";

// Checks available on bare tensor files, with the tensor degree they need.
struct ConstantsCheck {
    std::string_view name;
    bool needs_l3;
};

constexpr ConstantsCheck kConstantsChecks[] = {
    {"jacobi_identity", false},
    {"malcev_identity", false},
    {"akivis_identity", true},
    {"moufang_akivis", true},
};

bool starts_with(std::string_view s, std::string_view prefix)
{
    return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path.string() + ": " + e.what());
    }
}

bool is_constants_mode(const RunConfig& config)
{
    return starts_with(config.model, kConstantsPrefix);
}

std::string format_name(OutputFormat f)
{
    return f == OutputFormat::json ? "json" : "text";
}

nlohmann::ordered_json witness_json(const Witness& w)
{
    nlohmann::ordered_json j;
    j["component"] = w.component;
    j["exponents"] = w.exponents.to_vector();
    j["lhs"] = to_string(w.lhs);
    j["rhs"] = to_string(w.rhs);
    j["equation"] = w.equation;
    j["lower_indices"] = w.lower_indices;
    return j;
}

CheckResult skipped_result(std::string name, std::string model, std::string why)
{
    CheckResult r;
    r.identity = std::move(name);
    r.model = std::move(model);
    r.passed = false;
    r.notes.push_back(std::move(why));
    return r;
}

} // namespace

std::string tool_version()
{
    return MOUFANG_VERSION;
}

RunConfig parse_args(const std::vector<std::string>& args)
{
    RunConfig config;
    std::string checks = "all";
    std::string output = "text";
    std::string export_path;
    bool version = false;

    CLI::App app{"Exact verification of the differential identities of local analytic Moufang loops", "moufang_check"};
    app.add_option("--model", config.model, "built-in model, file:<law.json> or constants:<tensors.json>");
    app.add_option("--order", config.order, "jet order (>= 1, at most the global cap)");
    app.add_option("--checks", checks, "comma-separated check names, or all");
    app.add_option("--output", output, "text or json");
    app.add_option("--export-tensors", export_path, "write c and l3 to this JSON file");
    app.add_option("--jobs", config.jobs, "worker threads");
    app.add_flag("--version", version, "print the version and exit");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        config.early_exit_text = app.help();
        return config;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    if (version) {
        config.early_exit_text = "moufang_check " + tool_version() + "\n";
        return config;
    }

    if (output == "text") {
        config.output = OutputFormat::text;
    } else if (output == "json") {
        config.output = OutputFormat::json;
    } else {
        throw UsageError("--output must be text or json, got '" + output + "'");
    }
    if (config.order < 1) {
        throw UsageError("--order must be at least 1");
    }
    if (config.order > max_order()) {
        throw UsageError("--order " + std::to_string(config.order) + " exceeds cap " + std::to_string(max_order()) +
                         " (raise MOUFANG_MAX_ORDER)");
    }
    if (config.jobs < 1) {
        throw UsageError("--jobs must be at least 1");
    }
    if (!export_path.empty()) {
        config.export_tensors = export_path;
    }

    config.checks = split_commas(checks);
    if (config.checks.empty()) {
        throw UsageError("--checks must name at least one check");
    }
    const bool all = std::find(config.checks.begin(), config.checks.end(), "all") != config.checks.end();
    if (all && config.checks.size() > 1) {
        throw UsageError("--checks all cannot be combined with names");
    }

    if (starts_with(config.model, kFilePrefix) || is_constants_mode(config)) {
        const std::string_view prefix = is_constants_mode(config) ? kConstantsPrefix : kFilePrefix;
        const std::filesystem::path path = config.model.substr(prefix.size());
        if (!std::filesystem::is_regular_file(path)) {
            throw UsageError("model file not found: " + path.string());
        }
    } else {
        const auto& names = builtin_model_names();
        if (std::find(names.begin(), names.end(), config.model) == names.end()) {
            throw UsageError("unknown model '" + config.model + "'");
        }
    }

    if (!all) {
        for (const std::string& name : config.checks) {
            if (is_constants_mode(config)) {
                const bool known = std::any_of(std::begin(kConstantsChecks), std::end(kConstantsChecks),
                                               [&](const ConstantsCheck& c) { return c.name == name; });
                if (!known) {
                    throw UsageError("check '" + name + "' is not available on a tensor file");
                }
                continue;
            }
            const auto id = parse_check_id(name);
            if (!id) {
                throw UsageError("unknown check '" + name + "'");
            }
            if (check_info(*id).minimum_order > config.order) {
                throw UsageError("check '" + name + "' needs --order >= " +
                                 std::to_string(check_info(*id).minimum_order));
            }
        }
        if (config.export_tensors && config.order < 3) {
            throw UsageError("--export-tensors needs --order >= 3");
        }
    }
    return config;
}

Report run_report(const RunConfig& config)
{
    Report report;
    report.config = config;
    report.version = tool_version();
    const auto start = std::chrono::steady_clock::now();
    const bool all = config.checks.size() == 1 && config.checks.front() == "all";

    if (is_constants_mode(config)) {
        const std::filesystem::path path = config.model.substr(kConstantsPrefix.size());
        AlgebraConstants A;
        try {
            A = algebra_constants_from_json(read_json_file(path));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        for (const ConstantsCheck& c : kConstantsChecks) {
            const std::string name(c.name);
            if (!all && std::find(config.checks.begin(), config.checks.end(), name) == config.checks.end()) {
                continue;
            }
            if (c.needs_l3 && !A.l3) {
                if (all) {
                    report.skipped_checks.push_back(name);
                    continue;
                }
                report.resolved_checks.push_back(name);
                report.results.push_back(skipped_result(name, config.model, "tensor file has no l3"));
                continue;
            }
            report.resolved_checks.push_back(name);
            const auto t0 = std::chrono::steady_clock::now();
            CheckResult r = name == "jacobi_identity"   ? check_jacobi_identity(A, config.model)
                            : name == "malcev_identity" ? check_malcev_identity(A, config.model)
                            : name == "akivis_identity" ? check_akivis_identity(A, config.model)
                                                        : check_moufang_akivis(A, config.model);
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            report.results.push_back(std::move(r));
        }
    } else {
        std::optional<LoopModel> model;
        try {
            if (starts_with(config.model, kFilePrefix)) {
                model.emplace(load_custom_model(std::filesystem::path(config.model.substr(kFilePrefix.size()))));
            } else {
                model.emplace(builtin_model(config.model));
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }

        std::vector<CheckId> ids;
        for (const CheckInfo& info : check_catalog()) {
            const std::string name(info.name);
            const bool wanted =
                all || std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
            if (!wanted) {
                continue;
            }
            if (info.minimum_order > config.order) {
                report.skipped_checks.push_back(name);
                continue;
            }
            ids.push_back(info.id);
            report.resolved_checks.push_back(name);
        }
        report.results = run_suite(*model, config.order, ids, config.jobs);

        if (config.export_tensors) {
            if (config.order < 3) {
                throw UsageError("--export-tensors needs --order >= 3");
            }
            const Tower tower(*model, config.order);
            std::ofstream out(*config.export_tensors);
            if (!out) {
                throw std::runtime_error("cannot write " + config.export_tensors->string());
            }
            out << tower.tensor_export().dump(2) << "\n";
            if (!out) {
                throw std::runtime_error("write failed: " + config.export_tensors->string());
            }
        }
    }

    report.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.overall_pass = std::all_of(report.results.begin(), report.results.end(),
                                      [](const CheckResult& r) { return r.passed; });
    return report;
}

nlohmann::ordered_json report_json(const Report& report)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json config;
    config["model"] = report.config.model;
    config["order"] = report.config.order;
    config["checks"] = report.config.checks;
    config["output"] = format_name(report.config.output);
    config["export_tensors"] =
        report.config.export_tensors ? nlohmann::ordered_json(report.config.export_tensors->string()) : nullptr;
    config["jobs"] = report.config.jobs;
    doc["config"] = config;
    doc["version"] = report.version;

    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const CheckResult& r : report.results) {
        nlohmann::ordered_json j;
        j["identity"] = r.identity;
        j["model"] = r.model;
        j["requested_order"] = r.requested_order;
        j["verified_order"] = r.verified_order;
        j["passed"] = r.passed;
        j["first_failure"] = r.first_failure ? witness_json(*r.first_failure) : nlohmann::ordered_json(nullptr);
        j["comparisons"] = r.comparisons;
        j["discrepancies"] = r.discrepancies;
        j["notes"] = r.notes;
        results.push_back(std::move(j));
    }
    doc["results"] = std::move(results);
    doc["skipped_checks"] = report.skipped_checks;
    doc["overall_pass"] = report.overall_pass;

    nlohmann::ordered_json timings;
    timings["total_seconds"] = report.total_seconds;
    nlohmann::ordered_json per_check;
    for (const CheckResult& r : report.results) {
        per_check[r.identity] = r.seconds;
    }
    timings["checks"] = std::move(per_check);
    doc["timings"] = std::move(timings);
    return doc;
}

std::string emit_report(const Report& report, OutputFormat format)
{
    if (format == OutputFormat::json) {
        return report_json(report).dump(2) + "\n";
    }
    std::ostringstream out;
    out << "moufang_check " << report.version << "  model " << report.config.model << "  order "
        << report.config.order << "\n";
    for (const CheckResult& r : report.results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.identity << " (verified to order " << r.verified_order << ")\n";
        if (r.first_failure) {
            out << "  witness: " << describe(*r.first_failure) << "\n";
            out << "  differing coefficients: " << r.discrepancies << " (" << r.comparisons << " comparisons)\n";
        }
        for (const std::string& note : r.notes) {
            out << "  note: " << note << "\n";
        }
    }
    for (const std::string& name : report.skipped_checks) {
        out << "SKIP " << name << " (needs a higher order)\n";
    }
    out << (report.overall_pass ? "OVERALL PASS" : "OVERALL FAIL") << " (" << std::fixed << std::setprecision(2)
        << report.total_seconds << " s)\n";
    return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const UsageError& e) {
        err << "moufang_check: " << e.what() << "\n";
        return 2;
    }
    if (config.early_exit_text) {
        out << *config.early_exit_text;
        return 0;
    }
    try {
        const Report report = run_report(config);
        out << emit_report(report, config.output);
        return report.overall_pass ? 0 : 1;
    } catch (const UsageError& e) {
        err << "moufang_check: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "moufang_check: " << e.what() << "\n";
        return 1;
    }
}

} // namespace moufang
