// thermowork: sweeps, single-point reports and randomized bound audits for the
// thermalization work-extraction protocol.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thermowork/cli.hpp"

namespace cli = thermowork::cli;

namespace {

struct ModelOptions {
    std::string model = "rabi";
    double temperature = 0.0;
    std::optional<double> temperature_override;
    std::size_t cutoff = 16;
    double tol = 1e-8;
    std::string file;
};

void add_model_options(CLI::App& app, ModelOptions& opts) {
    app.add_option("--model", opts.model, "rabi | two_qubit | custom")
        ->check(CLI::IsMember({"rabi", "two_qubit", "custom"}))
        ->capture_default_str();
    app.add_option("--temperature", opts.temperature_override,
                   "k_B T in units of hbar*omega; 0 selects the exact ground-state branch");
    app.add_option("--cutoff", opts.cutoff, "starting Fock cutoff for the Rabi model")
        ->check(CLI::Range(2, 1024))
        ->capture_default_str();
    app.add_option("--tol", opts.tol, "convergence tolerance in units of hbar*omega")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--file", opts.file, "custom model JSON file")->check(CLI::ExistingFile);
}

cli::ModelSpec to_model_spec(const ModelOptions& opts) {
    cli::ModelSpec spec;
    spec.model = cli::parse_model(opts.model);
    spec.cutoff = opts.cutoff;
    spec.tol = opts.tol;
    if (spec.model == cli::Model::custom) {
        if (opts.file.empty()) {
            throw std::invalid_argument("--model custom requires --file");
        }
        spec.custom = cli::load_custom_model(opts.file);
        spec.temperature = spec.custom->temperature;
    }
    if (opts.temperature_override) {
        spec.temperature = thermowork::thermo::Temperature::of(*opts.temperature_override);
    } else if (spec.model == cli::Model::two_qubit) {
        spec.temperature = thermowork::thermo::Temperature::of(1.0);
    }
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Work extraction from a thermalization protocol on bipartite quantum systems"};
    app.require_subcommand(1);

    ModelOptions sweep_model;
    cli::SweepSpec sweep;
    std::string sweep_format = "csv";
    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a model over a grid of g/omega");
    add_model_options(*sweep_cmd, sweep_model);
    sweep_cmd->add_option("--g-start", sweep.start, "first g/omega")->capture_default_str();
    sweep_cmd->add_option("--g-stop", sweep.stop, "last g/omega (inclusive)")->capture_default_str();
    sweep_cmd->add_option("--g-step", sweep.step, "grid spacing")->capture_default_str();
    sweep_cmd->add_option("--format", sweep_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep.output_path, "output path (default: stdout)");

    ModelOptions point_model;
    double point_g = 0.0;
    auto* point_cmd = app.add_subcommand("point", "Report one model evaluation as JSON");
    add_model_options(*point_cmd, point_model);
    point_cmd->add_option("--g", point_g, "coupling g/omega")->required();

    cli::AuditSpec audit;
    double audit_temperature = 1.0;
    auto* audit_cmd = app.add_subcommand("audit", "Randomized check of work <= bound");
    audit_cmd->add_option("--count", audit.count, "number of random instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    audit_cmd->add_option("--da", audit.d_a, "dimension of subsystem A")
        ->check(CLI::Range(2, 6))
        ->capture_default_str();
    audit_cmd->add_option("--db", audit.d_b, "dimension of subsystem B")
        ->check(CLI::Range(2, 6))
        ->capture_default_str();
    audit_cmd->add_option("--temperature", audit_temperature, "k_B T in units of hbar*omega")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    audit_cmd->add_option("--seed", audit.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    try {
        if (*sweep_cmd) {
            sweep.model = to_model_spec(sweep_model);
            sweep.output_format = cli::parse_format(sweep_format);
            return cli::cmd_sweep(sweep, std::cout, std::cerr);
        }
        if (*point_cmd) {
            return cli::cmd_point(to_model_spec(point_model), point_g, std::cout, std::cerr);
        }
        audit.temperature = thermowork::thermo::Temperature::of(audit_temperature);
        return cli::cmd_audit(audit, std::cout, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    }
}
