// bykov: command-line front end for the hitting-time, diagnostics, averaging,
// adjusted-time and conjugacy computations.

#include "bykov/errors.hpp"
#include "bykov/harness/config.hpp"
#include "bykov/harness/experiment.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string config;
    std::string out = ".";
    std::optional<std::size_t> pairs;
    std::optional<double> tol;
};

void configure_logging() {
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("BYKOV_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

} // namespace

int main(int argc, char** argv) {
    using namespace bykov;
    using namespace bykov::harness;
    configure_logging();

    CLI::App app{"Hitting times, Birkhoff averages and conjugacy checks for a piecewise-linear Bykov cycle"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"simulate", "write hitting.csv"},
        {"diagnostics", "write diagnostics.csv (lemma combinations and ratios)"},
        {"birkhoff", "write birkhoff.csv and check historic behavior"},
        {"adjusted", "write adjusted.csv (adjusted hitting times)"},
        {"conjugacy", "write conjugacy.json comparing params with params_g"},
        {"verify-all", "run the acceptance suite on the reference system"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "JSON config (default: reference system)")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--pairs", opt.pairs, "number of hitting-time pairs");
        sub->add_option("--tol", opt.tol, "tolerance for birkhoff/conjugacy verdicts");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const Subcommand sub = *parse_subcommand(name);
    try {
        ExperimentConfig cfg = opt.config.empty() ? reference_config() : load_config(opt.config);
        if (opt.pairs) cfg.n_pairs = *opt.pairs;
        if (opt.tol) {
            if (sub == Subcommand::Birkhoff) cfg.tol_historic = *opt.tol;
            if (sub == Subcommand::Conjugacy) cfg.tol_conjugacy = *opt.tol;
        }
        return run_experiment(cfg, sub, opt.out, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitError;
}
