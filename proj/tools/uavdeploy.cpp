#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uavdeploy/cli/commands.hpp"
#include "uavdeploy/cli/config.hpp"
#include "uavdeploy/version.hpp"

using namespace uavdeploy;

namespace {

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw cli::ConfigError("--out", "cannot open '" + path + "' for writing");
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive UAV deployment analytics and Monte Carlo runner"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> realizations;
    unsigned threads = 0;
    std::string out_path;
    app.add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Master RNG seed");
    app.add_option("--realizations", realizations, "Monte Carlo realizations")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it");
    app.add_option("--out", out_path, "Output file (default stdout)");

    cli::AnalyticRequest areq;
    auto* analytic = app.add_subcommand("analytic", "Closed-form curves as CSV");
    analytic->add_option("--curve", areq.curve, "Curve name")
        ->required()
        ->check(CLI::IsMember(cli::analytic_curve_names()));
    analytic->add_option("--mu", areq.mu, "Mean load (overrides mu_list)");
    analytic->add_option("--beta", areq.beta, "Displacement factor (overrides the sweep)");
    analytic->add_option("--rho", areq.rho, "Coverage radius as a multiple of R (overrides rho_list)");
    analytic->add_option("--load", areq.load, "Asymptotic load regime for beta_star_success_2d")
        ->check(CLI::IsMember({"low", "high"}));

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run; JSON summary or CSV sweep");
    bool check_analytic = false;
    simulate->add_flag("--check-analytic", check_analytic,
                       "Exit 1 unless the estimate is within 3 standard errors of the closed form");

    app.add_subcommand("optimize", "Optimal displacement factor per load as JSON");

    std::string figure_name;
    auto* figure = app.add_subcommand("figure", "Figure dataset as CSV");
    figure->add_option("name", figure_name, "Figure name")->required()->check(CLI::IsMember(cli::figure_names()));

    cli::ValidateOptions vopts;
    std::optional<std::string> mutation;
    auto* validate = app.add_subcommand("validate", "Oracle-equivalence battery");
    validate->add_flag("--full", vopts.full, "10^6-realization oracles");
    validate->add_option("--mutate", mutation, "Tamper with a constant; the battery must then fail")
        ->check(CLI::IsMember(cli::mutation_names()));

    CLI11_PARSE(app, argc, argv);

    try {
        cli::ExperimentConfig cfg = config_path.empty() ? cli::ExperimentConfig{} : cli::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (realizations) cfg.realizations = *realizations;
        Sink sink(out_path);
        std::ostream& out = sink.stream();

        if (analytic->parsed()) return cli::cmd_analytic(cfg, areq, out);
        if (simulate->parsed()) return cli::cmd_simulate(cfg, threads, check_analytic, out, std::cerr);
        if (app.got_subcommand("optimize")) return cli::cmd_optimize(cfg, out);
        if (figure->parsed()) return cli::cmd_figure(figure_name, cfg, threads, out);
        if (validate->parsed()) {
            vopts.mutation = mutation;
            vopts.threads = threads;
            if (seed) vopts.seed = *seed;
            return cli::cmd_validate(vopts, out);
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitFailure;
    }
    return cli::kExitUsage;
}
