#ifndef UAVDEPLOY_CLI_COMMANDS_HPP
#define UAVDEPLOY_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavdeploy/analytic_1d.hpp"
#include "uavdeploy/cli/config.hpp"

namespace uavdeploy::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation battery or analytic check failed
inline constexpr int kExitUsage = 2;    // bad config or arguments

// "# uavdeploy <version> seed=<s> realizations=<n> dataset=<name>"
void write_csv_metadata(std::ostream& out, std::uint64_t seed, std::uint64_t realizations,
                        const std::string& dataset);

// Majority-vote closed form for the configured objective at load mu; ZeroCoverage
// maps to 0 and full 1D coverage to 1.
double analytic_metric(const ExperimentConfig& cfg, double mu, double beta);

// Optimal beta for the configured objective and dimension.
BetaSet analytic_beta_star(const ExperimentConfig& cfg, double mu);

struct AnalyticRequest {
    std::string curve;
    std::optional<double> mu;
    std::optional<double> beta;
    std::optional<double> rho;  // multiple of R
    std::optional<std::string> load;  // "low" or "high" for the asymptotic 2D success curve
};

std::vector<std::string> analytic_curve_names();

int cmd_analytic(const ExperimentConfig& cfg, const AnalyticRequest& req, std::ostream& out);
int cmd_optimize(const ExperimentConfig& cfg, std::ostream& out);
int cmd_simulate(const ExperimentConfig& cfg, unsigned threads, bool check_analytic, std::ostream& out,
                 std::ostream& err);

std::vector<std::string> figure_names();
int cmd_figure(const std::string& name, const ExperimentConfig& cfg, unsigned threads, std::ostream& out);

struct ValidateOptions {
    bool full = false;
    std::optional<std::string> mutation;
    unsigned threads = 0;
    std::uint64_t seed = 20240601;
};

std::vector<std::string> mutation_names();
int cmd_validate(const ValidateOptions& opts, std::ostream& out);

}  // namespace uavdeploy::cli

#endif
