#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "umw/capacity.hpp"
#include "umw/engine.hpp"
#include "umw/error.hpp"

namespace {

using json = nlohmann::json;

struct Common {
    std::string config;
    std::string out;
    std::string summary;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> horizon;
    bool diagnostics = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "CSV output path (stdout when omitted)");
    cmd->add_option("--summary", c.summary, "JSON summary path (defaults to the --out path with .json)");
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--horizon", c.horizon, "number of slots");
    cmd->add_flag("--diagnostics", c.diagnostics, "check queue invariants every slot");
}

umw::SimulationConfig resolve(const Common& c) {
    umw::SimulationConfig cfg = umw::load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    if (c.horizon) {
        if (*c.horizon <= 0) throw umw::ValidationError("--horizon must be positive");
        cfg.horizon = *c.horizon;
    }
    if (c.diagnostics) cfg.metrics.diagnostics = true;
    return cfg;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw umw::Error("cannot write " + path);
    f << text;
}

std::string summary_path(const Common& c) {
    if (!c.summary.empty()) return c.summary;
    if (c.out.empty()) return {};
    return std::filesystem::path(c.out).replace_extension(".json").string();
}

// Writes the summary; returns the exit code.
int finish(const Common& c, const char* command, const umw::SimulationConfig& cfg,
           const std::vector<umw::MetricsReport>& reports) {
    json runs = json::array();
    std::int64_t violations = 0;
    for (const auto& r : reports) {
        runs.push_back(umw::report_summary(r));
        violations += r.violations.total();
    }
    json doc = {{"command", command},
                {"config", umw::config_to_json(cfg)},
                {"seed", cfg.seed},
                {"runs", runs},
                {"invariant_violations", violations}};
    if (const auto p = summary_path(c); !p.empty()) emit(p, doc.dump(2) + "\n");
    if (cfg.metrics.diagnostics && violations > 0) {
        std::cerr << "umwsim: " << violations << " invariant violation(s)\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal max-weight network simulator"};
    app.require_subcommand(1);

    Common run_opts;
    std::string policy;
    auto* run_cmd = app.add_subcommand("run", "simulate one configuration");
    add_common(run_cmd, run_opts);
    run_cmd->add_option("--policy", policy, "umw, umw-heuristic or bp");

    Common sweep_opts;
    std::string loads;
    std::string param = "load";
    auto* sweep_cmd = app.add_subcommand("sweep", "one run per load value");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--load", loads, "comma-separated values")->required();
    sweep_cmd->add_option("--param", param, "load scales the class rates, rate sets them")
        ->check(CLI::IsMember({"load", "rate"}));
    sweep_cmd->add_option("--policy", policy, "umw, umw-heuristic or bp");

    Common cmp_opts;
    std::string policies;
    auto* cmp_cmd = app.add_subcommand("compare", "run several policies on the same arrivals");
    add_common(cmp_cmd, cmp_opts);
    cmp_cmd->add_option("--policies", policies, "comma-separated policies")->required();

    std::string cap_config, cap_out;
    umw::CatalogCaps caps;
    auto* cap_cmd = app.add_subcommand("capacity", "solve the capacity LP and print its certificate");
    cap_cmd->add_option("--config", cap_config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cap_cmd->add_option("--out", cap_out, "certificate path (stdout when omitted)");
    cap_cmd->add_option("--max-tree-edges", caps.max_tree_edges, "tree enumeration cap");
    cap_cmd->add_option("--max-paths", caps.max_paths, "simple paths per pair");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            auto cfg = resolve(run_opts);
            if (!policy.empty()) cfg.policy = umw::parse_policy(policy);
            const auto report = umw::run(cfg);
            std::ostringstream csv;
            umw::write_run_csv(csv, report);
            emit(run_opts.out, csv.str());
            return finish(run_opts, "run", cfg, {report});
        }
        if (*sweep_cmd) {
            auto cfg = resolve(sweep_opts);
            if (!policy.empty()) cfg.policy = umw::parse_policy(policy);
            std::vector<double> values;
            for (const auto& s : split(loads)) values.push_back(std::stod(s));
            if (values.empty()) throw umw::ValidationError("--load needs at least one value");
            const auto rows =
                umw::sweep(cfg, values, param == "rate" ? umw::SweepParam::rate : umw::SweepParam::load);
            std::vector<umw::MetricsReport> reports;
            for (const auto& r : rows) reports.push_back(r.report);
            std::ostringstream csv;
            umw::write_table_csv(csv, values, reports);
            emit(sweep_opts.out, csv.str());
            return finish(sweep_opts, "sweep", cfg, reports);
        }
        if (*cmp_cmd) {
            const auto cfg = resolve(cmp_opts);
            std::vector<umw::PolicyKind> kinds;
            for (const auto& s : split(policies)) kinds.push_back(umw::parse_policy(s));
            if (kinds.empty()) throw umw::ValidationError("--policies needs at least one policy");
            const auto reports = umw::compare(cfg, kinds);
            const std::vector<double> load_col(reports.size(), cfg.load_factor);
            std::ostringstream csv;
            umw::write_table_csv(csv, load_col, reports);
            emit(cmp_opts.out, csv.str());
            return finish(cmp_opts, "compare", cfg, reports);
        }
        if (*cap_cmd) {
            const auto cfg = umw::load_config(cap_config);
            const auto& tb = cfg.testbed;
            std::vector<umw::TrafficClass> scaled = tb.classes;
            for (auto& cls : scaled) cls.rate *= cfg.load_factor;
            const auto catalog = umw::build_catalog(tb.graph, scaled, caps);
            const auto cert = umw::max_scaling(tb.graph, tb.activation, scaled, catalog);
            json doc = umw::certificate_to_json(cert);
            doc["verified"] = umw::verify_certificate(cert, tb.graph, tb.activation, scaled);
            emit(cap_out, doc.dump(2) + "\n");
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "umwsim: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
