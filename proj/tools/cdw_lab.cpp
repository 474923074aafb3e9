// cdw-lab: batch front end for the CDW transport simulations.
//
// Subcommands: classical, quantum, soliton, variational, fit.
// Precedence for shared settings: CLI flag > CDW_LAB_* env var > config file.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cdw/config.hpp"
#include "cdw/errors.hpp"
#include "cdw/harness.hpp"

namespace {

struct SharedFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> jobs;
};

void add_shared(CLI::App* cmd, SharedFlags& flags, bool config_required) {
    auto* opt = cmd->add_option("--config", flags.config_path, "run configuration file");
    if (config_required) opt->required();
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "RNG seed (overrides config)");
    cmd->add_option("--jobs", flags.jobs, "parallel sweep children (0 = cores)");
}

std::optional<std::string> env_value(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

cdw::RunConfig assemble(const SharedFlags& flags, cdw::ExperimentKind kind) {
    cdw::RunConfig config;
    if (!flags.config_path.empty()) {
        config = cdw::load_config(flags.config_path);
        if (config.kind != kind)
            throw cdw::ValidationError("config experiment '" + cdw::to_string(config.kind) +
                                           "' does not match subcommand '" +
                                           cdw::to_string(kind) + "'",
                                       "experiment");
    } else {
        config.kind = kind;
    }

    if (const auto v = env_value("CDW_LAB_SEED")) config.seed = std::stoull(*v);
    if (const auto v = env_value("CDW_LAB_OUT")) config.out_dir = *v;
    if (const auto v = env_value("CDW_LAB_JOBS")) config.jobs = std::stoull(*v);

    if (flags.seed) config.seed = *flags.seed;
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (flags.jobs) config.jobs = *flags.jobs;
    return config;
}

int dispatch(const cdw::RunConfig& config) {
    const cdw::RunOutcome outcome = cdw::run(config);
    if (outcome.exit_status == 0) {
        std::cout << "ok: outputs in " << outcome.out_dir << "\n";
    } else {
        std::cerr << "error: " << outcome.error << " (outputs in " << outcome.out_dir << ")\n";
    }
    return outcome.exit_status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cdw-lab: charge-density-wave transport simulations"};
    app.require_subcommand(1);

    SharedFlags classical_flags;
    auto* classical = app.add_subcommand("classical", "random-pinning transport run");
    add_shared(classical, classical_flags, true);

    SharedFlags quantum_flags;
    std::string scheme;
    auto* quantum = app.add_subcommand("quantum", "single-chain wavefunction evolution");
    add_shared(quantum, quantum_flags, true);
    quantum->add_option("--scheme", scheme, "time stepper: cn | df")
        ->check(CLI::IsMember({"cn", "df"}));

    SharedFlags soliton_flags;
    std::optional<double> beta;
    auto* soliton = app.add_subcommand("soliton", "sine-Gordon kink diagnostics");
    add_shared(soliton, soliton_flags, false);
    soliton->add_option("--beta", beta, "dimensionless kink velocity, |beta| < 1");

    SharedFlags variational_flags;
    auto* variational = app.add_subcommand("variational", "multi-chain band structure sweep");
    add_shared(variational, variational_flags, true);

    SharedFlags fit_flags;
    std::string law, data, loss;
    auto* fit = app.add_subcommand("fit", "current-law least squares");
    add_shared(fit, fit_flags, false);
    fit->add_option("--law", law, "current law: ss | zener")
        ->check(CLI::IsMember({"ss", "zener"}));
    fit->add_option("--data", data, "csv with columns (e, i)");
    fit->add_option("--loss", loss, "least-squares loss: linear | log")
        ->check(CLI::IsMember({"linear", "log"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (classical->parsed()) {
            return dispatch(assemble(classical_flags, cdw::ExperimentKind::classical));
        }
        if (quantum->parsed()) {
            auto config = assemble(quantum_flags, cdw::ExperimentKind::quantum);
            if (!scheme.empty()) config.quantum.scheme = scheme;
            return dispatch(config);
        }
        if (soliton->parsed()) {
            auto config = assemble(soliton_flags, cdw::ExperimentKind::soliton);
            if (beta) config.soliton.beta = *beta;
            return dispatch(config);
        }
        if (variational->parsed()) {
            return dispatch(assemble(variational_flags, cdw::ExperimentKind::variational));
        }
        if (fit->parsed()) {
            auto config = assemble(fit_flags, cdw::ExperimentKind::fit);
            if (!law.empty()) config.fit.law = law;
            if (!data.empty()) config.fit.data = data;
            if (!loss.empty()) config.fit.loss = loss;
            if (config.fit.data.empty())
                throw cdw::ValidationError("fit needs --data or a config with [fit] data", "data");
            return dispatch(config);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
