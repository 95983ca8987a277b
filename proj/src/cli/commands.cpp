#include "uavdeploy/cli/commands.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "uavdeploy/analytic_2d.hpp"
#include "uavdeploy/montecarlo.hpp"
#include "uavdeploy/version.hpp"

namespace uavdeploy::cli {

using nlohmann::json;

void write_csv_metadata(std::ostream& out, std::uint64_t seed, std::uint64_t realizations,
                        const std::string& dataset)
{
    out << "# " << kToolName << ' ' << kToolVersion << " seed=" << seed
        << " realizations=" << realizations << " dataset=" << dataset << '\n';
}

namespace {

// rho as a multiple of R; 1D closed form covers 0 < rho < R only.
double success_1d_any(double beta, double r, double mu, double R)
{
    if (r <= 0.0) return 0.0;
    if (r >= 1.0) return 1.0;
    return success_prob_1d(beta, r * R, mu, R);
}

std::optional<double> coverage_ratio(const ExperimentConfig& cfg)
{
    if (!cfg.gamma_th_db) return std::nullopt;
    const auto rho = radius_meters(coverage_radius(cfg.system_params(), db_to_linear(*cfg.gamma_th_db)));
    return rho ? *rho / cfg.cell_half_width_m : 0.0;
}

std::vector<double> loads(const ExperimentConfig& cfg, const std::optional<double>& override_mu)
{
    if (override_mu) return {*override_mu};
    if (cfg.mu || cfg.density) return {cfg.mean_load()};
    return cfg.mu_list;
}

std::vector<double> betas(const ExperimentConfig& cfg, const std::optional<double>& override_beta)
{
    if (override_beta) return {*override_beta};
    if (cfg.beta) return {*cfg.beta};
    if (cfg.beta_sweep) return cfg.beta_sweep->values();
    return BetaSweep{0.0, 1.0, 0.05}.values();
}

std::vector<double> rhos(const ExperimentConfig& cfg, const std::optional<double>& override_rho)
{
    if (override_rho) return {*override_rho};
    return cfg.rho_list;
}

const char* regime_name(SuccessRegime2D r)
{
    switch (r) {
    case SuccessRegime2D::Interval: return "interval";
    case SuccessRegime2D::Beta1: return "beta1";
    case SuccessRegime2D::Beta2: return "beta2";
    case SuccessRegime2D::Beta3: return "beta3";
    case SuccessRegime2D::Beta4: return "beta4";
    case SuccessRegime2D::Centre: return "centre";
    }
    return "unknown";
}

BetaSet beta_star_success_1d_any(double r, double R)
{
    if (r <= 0.0 || r >= 1.0) return BetaSet::point(0.0);
    return optimal_beta_success_1d(r * R, R);
}

}  // namespace

double analytic_metric(const ExperimentConfig& cfg, double mu, double beta)
{
    const SystemParams params = cfg.system_params();
    const double R = cfg.cell_half_width_m;
    const auto r = coverage_ratio(cfg);
    if (cfg.dimension == Dimension::OneD) {
        if (!r) return avg_throughput_1d(beta, mu, params, R);
        return success_1d_any(beta, *r, mu, R);
    }
    if (!r) return avg_throughput_2d(beta, mu, params, R);
    return *r > 0.0 ? success_prob_2d(beta, *r * R, mu, R) : 0.0;
}

BetaSet analytic_beta_star(const ExperimentConfig& cfg, double mu)
{
    const SystemParams params = cfg.system_params();
    const double R = cfg.cell_half_width_m;
    const auto r = coverage_ratio(cfg);
    if (cfg.dimension == Dimension::OneD) {
        if (!r) return BetaSet::point(optimal_beta_throughput_1d(mu, params, R));
        return beta_star_success_1d_any(*r, R);
    }
    if (!r) return BetaSet::point(optimal_beta_throughput_2d(mu, params, R));
    if (*r <= 0.0) return BetaSet::point(0.0);
    return optimal_beta_success_2d(*r * R, mu, R).beta;
}

std::vector<std::string> analytic_curve_names()
{
    return {"probs_1d",           "probs_2d",
            "throughput_1d",      "throughput_2d",
            "success_1d",         "success_2d",
            "beta_star_throughput_1d", "beta_star_throughput_2d",
            "beta_star_success_1d",    "beta_star_success_2d"};
}

int cmd_analytic(const ExperimentConfig& cfg, const AnalyticRequest& req, std::ostream& out)
{
    const SystemParams params = cfg.system_params();
    const double R = cfg.cell_half_width_m;
    const std::string& c = req.curve;
    out << std::setprecision(12);
    write_csv_metadata(out, cfg.seed, 0, "analytic:" + c);

    if (c == "probs_1d" || c == "probs_2d") {
        const bool two = c == "probs_2d";
        out << (two ? "mu,q0,q1,q2,q3,q4,truncation_error_bound\n" : "mu,q0,q1,q2,truncation_error_bound\n");
        for (double mu : loads(cfg, req.mu)) {
            const auto p = two ? displacement_probs_2d(mu) : displacement_probs_1d(mu);
            out << mu;
            for (double q : p.q) out << ',' << q;
            out << ',' << p.truncation_error_bound << '\n';
        }
    } else if (c == "throughput_1d" || c == "throughput_2d") {
        out << "mu,beta,mean_throughput\n";
        for (double mu : loads(cfg, req.mu)) {
            for (double b : betas(cfg, req.beta)) {
                const double v = c == "throughput_1d" ? avg_throughput_1d(b, mu, params, R)
                                                      : avg_throughput_2d(b, mu, params, R);
                out << mu << ',' << b << ',' << v << '\n';
            }
        }
    } else if (c == "success_1d" || c == "success_2d") {
        out << "mu,rho_over_r,beta,success_prob\n";
        for (double mu : loads(cfg, req.mu)) {
            for (double r : rhos(cfg, req.rho)) {
                for (double b : betas(cfg, req.beta)) {
                    const double v = c == "success_1d" ? success_1d_any(b, r, mu, R)
                                                       : success_prob_2d(b, r * R, mu, R);
                    out << mu << ',' << r << ',' << b << ',' << v << '\n';
                }
            }
        }
    } else if (c == "beta_star_throughput_1d" || c == "beta_star_throughput_2d") {
        out << "mu,beta_star\n";
        for (double mu : loads(cfg, req.mu)) {
            const double b = c == "beta_star_throughput_1d" ? optimal_beta_throughput_1d(mu, params, R)
                                                            : optimal_beta_throughput_2d(mu, params, R);
            out << mu << ',' << b << '\n';
        }
    } else if (c == "beta_star_success_1d") {
        out << "rho_over_r,beta_lo,beta_hi\n";
        for (double r : rhos(cfg, req.rho)) {
            const BetaSet s = beta_star_success_1d_any(r, R);
            out << r << ',' << s.lo << ',' << s.hi << '\n';
        }
    } else if (c == "beta_star_success_2d") {
        if (req.load) {
            LoadRegime regime;
            if (*req.load == "low") regime = LoadRegime::LowLoad;
            else if (*req.load == "high") regime = LoadRegime::HighLoad;
            else throw ConfigError("--load", "must be \"low\" or \"high\"");
            out << "load,rho_over_r,beta_lo,beta_hi\n";
            for (double r : rhos(cfg, req.rho)) {
                const BetaSet s = asymptotic_beta_success_2d(r * R, regime, R);
                out << *req.load << ',' << r << ',' << s.lo << ',' << s.hi << '\n';
            }
        } else {
            out << "mu,rho_over_r,beta_lo,beta_hi,regime\n";
            for (double mu : loads(cfg, req.mu)) {
                for (double r : rhos(cfg, req.rho)) {
                    const auto s = optimal_beta_success_2d(r * R, mu, R);
                    out << mu << ',' << r << ',' << s.beta.lo << ',' << s.beta.hi << ','
                        << regime_name(s.regime) << '\n';
                }
            }
        }
    } else {
        throw ConfigError("--curve", "unknown curve '" + c + "'");
    }
    return kExitOk;
}

int cmd_optimize(const ExperimentConfig& cfg, std::ostream& out)
{
    json results = json::array();
    for (double mu : loads(cfg, std::nullopt)) {
        const BetaSet s = analytic_beta_star(cfg, mu);
        results.push_back({{"mu", mu},
                           {"beta_star_lo", s.lo},
                           {"beta_star_hi", s.hi},
                           {"value_at_beta_star", analytic_metric(cfg, mu, s.mid())},
                           {"value_at_zero", analytic_metric(cfg, mu, 0.0)}});
    }
    json j{{"tool", kToolName},
           {"version", kToolVersion},
           {"dimension", dimension_name(cfg.dimension)},
           {"objective", cfg.gamma_th_db ? "success_prob" : "avg_throughput"},
           {"results", results}};
    if (auto r = coverage_ratio(cfg)) j["rho_over_r"] = *r;
    out << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_simulate(const ExperimentConfig& cfg, unsigned threads, bool check_analytic, std::ostream& out,
                 std::ostream& err)
{
    const SystemParams params = cfg.system_params();
    const CellGeometry cell = cfg.cell();
    const double mu = cell.mean_load();
    const Objective obj = cfg.objective();
    const bool majority = cfg.scheme == SchemeKind::MajorityVote;
    const bool multi = cfg.multi_uav_n.has_value();
    if (multi && !(majority || cfg.scheme == SchemeKind::NonAdaptive)) {
        throw ConfigError("scheme", "multi-UAV runs support majority_vote and non_adaptive only");
    }

    auto run = [&](double beta) {
        if (multi) {
            return multi_uav_1d(cell, params, majority ? beta : 0.0, *cfg.multi_uav_n, cfg.realizations,
                                cfg.seed, threads, obj);
        }
        Scheme s;
        switch (cfg.scheme) {
        case SchemeKind::NonAdaptive: s = Scheme::non_adaptive(obj); break;
        case SchemeKind::MajorityVote: s = Scheme::majority_vote(beta, obj); break;
        case SchemeKind::ExactNumber: s = Scheme::exact_number(obj); break;
        case SchemeKind::PerfectKnowledge:
            s = Scheme::perfect_knowledge(obj, cfg.dimension == Dimension::OneD ? cfg.pk_grid : cfg.pk_grid_2d);
            break;
        }
        return run_scheme(cell, params, s, cfg.realizations, cfg.seed, threads);
    };

    if (cfg.uses_sweep()) {
        if (!majority) throw ConfigError("beta_sweep", "sweeps apply to the majority_vote scheme");
        out << std::setprecision(12);
        write_csv_metadata(out, cfg.seed, cfg.realizations, multi ? "simulate:multi_uav" : "simulate");
        out << "beta,mean,std_error,n_kept\n";
        for (double b : cfg.beta_sweep->values()) {
            const MetricsEstimate e = run(b);
            out << b << ',' << e.mean << ',' << e.std_error << ',' << e.n_kept << '\n';
        }
        return kExitOk;
    }

    double beta = 0.0;
    if (majority) beta = cfg.uses_fixed_beta() ? *cfg.beta : analytic_beta_star(cfg, mu).mid();
    const MetricsEstimate e = run(beta);

    std::optional<double> analytic;
    const bool closed_form = !multi && (majority || cfg.scheme == SchemeKind::NonAdaptive);
    if (closed_form) analytic = analytic_metric(cfg, mu, beta);

    json j{{"tool", kToolName},
           {"version", kToolVersion},
           {"scheme", to_string(cfg.scheme)},
           {"dimension", dimension_name(cfg.dimension)},
           {"objective", cfg.gamma_th_db ? "success_prob" : "avg_throughput"},
           {"mu", mu},
           {"beta", beta},
           {"mean", e.mean},
           {"std_error", e.std_error},
           {"n_kept", e.n_kept},
           {"n_total", e.n_total},
           {"seed", e.seed},
           {"config", to_json(cfg)}};
    if (multi) j["multi_uav_n"] = *cfg.multi_uav_n;
    if (analytic) j["analytic"] = *analytic;

    int code = kExitOk;
    if (check_analytic) {
        if (!analytic) {
            err << "no closed form exists for this scheme; --check-analytic needs majority_vote or non_adaptive\n";
            return kExitUsage;
        }
        const double z = e.std_error > 0.0 ? std::abs(e.mean - *analytic) / e.std_error
                                           : (e.mean == *analytic ? 0.0 : INFINITY);
        j["check"] = {{"z_score", z}, {"tolerance_std_errors", 3.0}, {"pass", z <= 3.0}};
        if (z > 3.0) {
            err << "analytic check failed: |mean - analytic| = " << std::abs(e.mean - *analytic)
                << " exceeds 3 standard errors (" << 3.0 * e.std_error << ")\n";
            code = kExitFailure;
        }
    }
    out << j.dump(2) << '\n';
    return code;
}

}  // namespace uavdeploy::cli
