#ifndef UAVDEPLOY_CLI_CONFIG_HPP
#define UAVDEPLOY_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavdeploy/core_model.hpp"
#include "uavdeploy/montecarlo.hpp"

namespace uavdeploy::cli {

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::invalid_argument("config field '" + field + "': " + message), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct BetaSweep {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.05;

    std::vector<double> values() const;
};

/**
 * One experiment, in engineering units.
 *
 * The load is given either as a density (density_per_m for 1D,
 * density_per_m2 for 2D) or directly as mu. rho_list entries are multiples
 * of R. At most one of beta, beta_sweep and solve_beta_star may be set; when
 * none is set the run solves for beta*.
 */
struct ExperimentConfig {
    double tx_power_mw = 10.0;
    double altitude_m = 100.0;
    double theta_db = -47.0;
    double noise_dbm = -110.0;
    double cell_half_width_m = 1000.0;

    Dimension dimension = Dimension::OneD;
    std::optional<double> density;
    std::optional<double> mu;

    std::optional<double> gamma_th_db;
    SchemeKind scheme = SchemeKind::MajorityVote;

    std::optional<double> beta;
    std::optional<BetaSweep> beta_sweep;
    bool solve_beta_star = false;

    std::vector<double> mu_list{0.2, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> rho_list{0.3, 0.6, 0.8, 1.0, 1.3};
    std::vector<double> gamma_th_db_list{15.0, 20.0, 25.0, 30.0};

    std::optional<int> multi_uav_n;
    int pk_grid = 201;
    int pk_grid_2d = 41;

    std::uint64_t realizations = 100000;
    std::uint64_t seed = 1;

    SystemParams system_params() const;
    double mean_load() const;
    CellGeometry cell() const;
    CellGeometry cell_with_load(double mu) const;
    Objective objective() const;
    bool uses_fixed_beta() const { return beta.has_value(); }
    bool uses_sweep() const { return beta_sweep.has_value(); }
    bool solves_beta_star() const { return solve_beta_star || (!beta && !beta_sweep); }

    // Cross-field checks; throws ConfigError naming the offending field.
    void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

std::string dimension_name(Dimension d);

}  // namespace uavdeploy::cli

#endif
