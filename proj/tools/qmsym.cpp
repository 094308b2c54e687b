// Command-line front end: run scenarios, certify swaps, export pointer
// distributions.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmsym/cli/config.hpp"
#include "qmsym/cli/report.hpp"

namespace {

using qmsym::cli::ExitCode;

struct Overrides {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qmsym::ConfigError("config", "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

qmsym::cli::RunConfig load(const std::string &path, const Overrides &o,
                           std::optional<qmsym::cli::ScenarioKind> scenario = std::nullopt) {
    qmsym::cli::RunConfig config = qmsym::cli::parse_config(read_file(path), scenario);
    if (o.tol) config.params.tol = *o.tol;
    if (o.seed) config.params.seed = *o.seed;
    if (o.tol || o.seed) qmsym::cli::validate(config);
    return config;
}

void write_output(const Overrides &o, const std::string &file_name, const std::string &text) {
    if (o.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / file_name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw qmsym::ConfigError("out", "cannot write '" + path.string() + "'");
    }
}

int run_report(const qmsym::cli::RunConfig &config, const Overrides &o) {
    const qmsym::ScenarioReport report = qmsym::cli::run_scenario(config);
    write_output(o, "report.json", qmsym::cli::emit_report(config, report));
    if (!report.pass) {
        std::cerr << "certification failed: " << report.scenario << '\n';
        return static_cast<int>(ExitCode::certification);
    }
    return static_cast<int>(ExitCode::pass);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Symmetry certification for measurement worlds"};
    app.require_subcommand(1);

    Overrides overrides;
    double tol = 0.0;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--tol", tol, "Certification tolerance override");
        cmd->add_option("--seed", seed, "Seed override for negative controls");
        cmd->add_option("--out", overrides.out_dir, "Write output files into this directory");
    };

    std::string config_path;
    auto *run = app.add_subcommand("run", "Run the scenario named in the config");
    run->add_option("config", config_path, "JSON config file")->required();
    add_common(run);

    std::string lemma;
    auto *certify = app.add_subcommand("certify", "Certify a swap construction");
    certify->add_option("lemma", lemma, "lemma1 or lemma2")
        ->required()
        ->check(CLI::IsMember({"lemma1", "lemma2"}));
    certify->add_option("config", config_path, "JSON config file")->required();
    add_common(certify);

    double time = 0.0;
    std::optional<double> branch;
    auto *exporter = app.add_subcommand("export-distribution", "Export P(zeta, lambda) as CSV");
    exporter->add_option("config", config_path, "JSON config file")->required();
    exporter->add_option("--time", time, "Evolution time t in [0, T]")->required();
    exporter->add_option("--branch", branch, "Start in this eigenvalue branch only");
    add_common(exporter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    for (auto *cmd : {run, certify, exporter}) {
        if (cmd->count("--tol")) overrides.tol = tol;
        if (cmd->count("--seed")) overrides.seed = seed;
    }

    try {
        if (*run) {
            return run_report(load(config_path, overrides), overrides);
        }
        if (*certify) {
            const auto kind = lemma == "lemma1" ? qmsym::cli::ScenarioKind::certify_lemma1
                                                : qmsym::cli::ScenarioKind::certify_lemma2;
            return run_report(load(config_path, overrides, kind), overrides);
        }
        const auto config = load(config_path, overrides);
        write_output(overrides, "distribution.csv",
                     qmsym::cli::export_distribution(config, time, branch));
        return static_cast<int>(ExitCode::pass);
    } catch (const qmsym::Error &e) {
        std::cerr << "error [" << qmsym::to_string(e.category()) << "] " << e.what() << '\n';
        return static_cast<int>(qmsym::cli::exit_code_for(e.category()));
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::numerical);
    }
}
