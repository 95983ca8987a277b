#include "uavdeploy/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace uavdeploy::cli {

using nlohmann::json;

std::vector<double> BetaSweep::values() const
{
    std::vector<double> out;
    const long n = std::lround(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::string dimension_name(Dimension d) { return d == Dimension::OneD ? "1d" : "2d"; }

SystemParams ExperimentConfig::system_params() const
{
    return SystemParams::from_engineering(tx_power_mw, altitude_m, theta_db, noise_dbm);
}

double ExperimentConfig::mean_load() const
{
    if (mu) return *mu;
    if (density) {
        const double R = cell_half_width_m;
        return dimension == Dimension::OneD ? 2.0 * *density * R : 4.0 * R * R * *density;
    }
    return 2.0;
}

CellGeometry ExperimentConfig::cell() const { return cell_with_load(mean_load()); }

CellGeometry ExperimentConfig::cell_with_load(double load) const
{
    return CellGeometry::from_mean_load(dimension, cell_half_width_m, load);
}

Objective ExperimentConfig::objective() const
{
    if (!gamma_th_db) return Objective::avg_throughput();
    return Objective::success_prob(db_to_linear(*gamma_th_db));
}

void ExperimentConfig::validate() const
{
    auto positive = [](const char* field, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be finite and > 0");
    };
    positive("tx_power_mw", tx_power_mw);
    positive("altitude_m", altitude_m);
    positive("cell_half_width_m", cell_half_width_m);
    if (!std::isfinite(theta_db)) throw ConfigError("theta_db", "must be finite");
    if (!std::isfinite(noise_dbm)) throw ConfigError("noise_dbm", "must be finite");
    if (density && mu) throw ConfigError("mu", "give either a density or mu, not both");
    if (density && !(*density >= 0.0)) throw ConfigError("density", "must be >= 0");
    if (mu) positive("mu", *mu);
    const int modes = (beta ? 1 : 0) + (beta_sweep ? 1 : 0) + (solve_beta_star ? 1 : 0);
    if (modes > 1) {
        throw ConfigError("beta", "exactly one of beta, beta_sweep, solve_beta_star may be set");
    }
    if (beta && !(*beta >= 0.0 && *beta <= 1.0)) throw ConfigError("beta", "must lie in [0, 1]");
    if (beta_sweep) {
        const auto& s = *beta_sweep;
        if (!(s.step > 0.0)) throw ConfigError("beta_sweep.step", "must be > 0");
        if (!(s.start >= 0.0 && s.stop <= 1.0 && s.start <= s.stop)) {
            throw ConfigError("beta_sweep", "need 0 <= start <= stop <= 1");
        }
    }
    for (double m : mu_list) {
        if (!(m > 0.0)) throw ConfigError("mu_list", "entries must be > 0");
    }
    for (double r : rho_list) {
        if (!(r > 0.0)) throw ConfigError("rho_list", "entries must be > 0");
    }
    if (multi_uav_n && *multi_uav_n < 0) throw ConfigError("multi_uav_n", "must be >= 0");
    if (multi_uav_n && dimension != Dimension::OneD) {
        throw ConfigError("multi_uav_n", "multi-UAV runs are 1D only");
    }
    if (pk_grid < 2) throw ConfigError("pk_grid", "must be >= 2");
    if (pk_grid_2d < 2) throw ConfigError("pk_grid_2d", "must be >= 2");
    if (realizations < 1) throw ConfigError("realizations", "must be >= 1");
    if (scheme == SchemeKind::ExactNumber && dimension == Dimension::TwoD) {
        throw ConfigError("scheme", "exact_number is only defined in 1D");
    }
}

namespace {

const std::set<std::string> kKnownFields{
    "tx_power_mw",  "altitude_m",       "theta_db",   "noise_dbm",       "cell_half_width_m",
    "dimension",    "density_per_m",    "density_per_m2", "mu",          "gamma_th_db",
    "scheme",       "beta",             "beta_sweep", "solve_beta_star", "mu_list",
    "rho_list",     "gamma_th_db_list", "multi_uav_n", "pk_grid",        "pk_grid_2d",
    "realizations", "seed"};

template <typename T>
T get_field(const json& j, const char* field)
{
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(field, "has the wrong type");
    }
}

template <typename T>
void read(const json& j, const char* field, T& dst)
{
    if (j.contains(field)) dst = get_field<T>(j, field);
}

template <typename T>
void read(const json& j, const char* field, std::optional<T>& dst)
{
    if (j.contains(field) && !j.at(field).is_null()) dst = get_field<T>(j, field);
}

}  // namespace

ExperimentConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("<root>", "must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!kKnownFields.contains(key)) throw ConfigError(key, "unknown field");
    }
    ExperimentConfig c;
    read(j, "tx_power_mw", c.tx_power_mw);
    read(j, "altitude_m", c.altitude_m);
    read(j, "theta_db", c.theta_db);
    read(j, "noise_dbm", c.noise_dbm);
    read(j, "cell_half_width_m", c.cell_half_width_m);

    std::optional<std::string> dim;
    read(j, "dimension", dim);
    if (j.contains("density_per_m") && j.contains("density_per_m2")) {
        throw ConfigError("density_per_m2", "give density_per_m (1D) or density_per_m2 (2D), not both");
    }
    if (j.contains("density_per_m")) {
        c.density = get_field<double>(j, "density_per_m");
        c.dimension = Dimension::OneD;
    }
    if (j.contains("density_per_m2")) {
        c.density = get_field<double>(j, "density_per_m2");
        c.dimension = Dimension::TwoD;
    }
    if (dim) {
        Dimension d;
        if (*dim == "1d") d = Dimension::OneD;
        else if (*dim == "2d") d = Dimension::TwoD;
        else throw ConfigError("dimension", "must be \"1d\" or \"2d\"");
        if (c.density && d != c.dimension) {
            throw ConfigError("dimension", "contradicts the density field's units");
        }
        c.dimension = d;
    }
    read(j, "mu", c.mu);
    read(j, "gamma_th_db", c.gamma_th_db);
    if (j.contains("scheme")) {
        const auto name = get_field<std::string>(j, "scheme");
        try {
            c.scheme = scheme_kind_from_string(name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("scheme", e.what());
        }
    }
    read(j, "beta", c.beta);
    if (j.contains("beta_sweep") && !j.at("beta_sweep").is_null()) {
        const json& s = j.at("beta_sweep");
        if (!s.is_object()) throw ConfigError("beta_sweep", "must be an object {start, stop, step}");
        BetaSweep sw;
        read(s, "start", sw.start);
        read(s, "stop", sw.stop);
        read(s, "step", sw.step);
        c.beta_sweep = sw;
    }
    read(j, "solve_beta_star", c.solve_beta_star);
    read(j, "mu_list", c.mu_list);
    read(j, "rho_list", c.rho_list);
    read(j, "gamma_th_db_list", c.gamma_th_db_list);
    read(j, "multi_uav_n", c.multi_uav_n);
    read(j, "pk_grid", c.pk_grid);
    read(j, "pk_grid_2d", c.pk_grid_2d);
    read(j, "realizations", c.realizations);
    read(j, "seed", c.seed);
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig& c)
{
    json j;
    j["tx_power_mw"] = c.tx_power_mw;
    j["altitude_m"] = c.altitude_m;
    j["theta_db"] = c.theta_db;
    j["noise_dbm"] = c.noise_dbm;
    j["cell_half_width_m"] = c.cell_half_width_m;
    j["dimension"] = dimension_name(c.dimension);
    if (c.density) j[c.dimension == Dimension::OneD ? "density_per_m" : "density_per_m2"] = *c.density;
    if (c.mu) j["mu"] = *c.mu;
    if (c.gamma_th_db) j["gamma_th_db"] = *c.gamma_th_db;
    j["scheme"] = to_string(c.scheme);
    if (c.beta) j["beta"] = *c.beta;
    if (c.beta_sweep) {
        j["beta_sweep"] = {{"start", c.beta_sweep->start},
                           {"stop", c.beta_sweep->stop},
                           {"step", c.beta_sweep->step}};
    }
    j["solve_beta_star"] = c.solve_beta_star;
    j["mu_list"] = c.mu_list;
    j["rho_list"] = c.rho_list;
    j["gamma_th_db_list"] = c.gamma_th_db_list;
    if (c.multi_uav_n) j["multi_uav_n"] = *c.multi_uav_n;
    j["pk_grid"] = c.pk_grid;
    j["pk_grid_2d"] = c.pk_grid_2d;
    j["realizations"] = c.realizations;
    j["seed"] = c.seed;
    return j;
}

}  // namespace uavdeploy::cli
