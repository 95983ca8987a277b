#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>

#include "uavdeploy/analytic_2d.hpp"
#include "uavdeploy/cli/commands.hpp"
#include "uavdeploy/montecarlo.hpp"
#include "uavdeploy/numerics.hpp"

namespace uavdeploy::cli {

namespace {

struct FigureContext {
    const ExperimentConfig& cfg;
    unsigned threads;
    std::ostream& out;
    SystemParams params;
    double R;

    FigureContext(const ExperimentConfig& c, unsigned t, std::ostream& o)
        : cfg(c), threads(t), out(o), params(c.system_params()), R(c.cell_half_width_m) {}

    MetricsEstimate run(Dimension dim, double mu, const Scheme& s) const
    {
        return run_scheme(CellGeometry::from_mean_load(dim, R, mu), params, s, cfg.realizations, cfg.seed,
                          threads);
    }

    ExperimentConfig with(Dimension dim, std::optional<double> gamma_db) const
    {
        ExperimentConfig c = cfg;
        c.dimension = dim;
        c.gamma_th_db = gamma_db;
        c.density.reset();
        c.mu.reset();
        return c;
    }
};

std::vector<double> grid(double lo, double hi, double step) { return BetaSweep{lo, hi, step}.values(); }

std::vector<double> figure_betas(const ExperimentConfig& cfg)
{
    return cfg.beta_sweep ? cfg.beta_sweep->values() : grid(0.0, 1.0, 0.05);
}

double figure_gamma_db(const ExperimentConfig& cfg) { return cfg.gamma_th_db.value_or(20.0); }

void curve_figure(const FigureContext& fx, Dimension dim, bool success)
{
    const std::optional<double> gamma = success ? std::optional(figure_gamma_db(fx.cfg)) : std::nullopt;
    const ExperimentConfig c = fx.with(dim, gamma);
    const Objective obj = c.objective();
    std::optional<double> rho;
    if (success) rho = radius_meters(coverage_radius(fx.params, obj.gamma_th)).value_or(0.0);
    fx.out << "mu,rho_over_r,beta,analytic,mean,std_error,n_kept,beta_star_lo,beta_star_hi\n";
    for (double mu : fx.cfg.mu_list) {
        const BetaSet star = analytic_beta_star(c, mu);
        for (double b : figure_betas(fx.cfg)) {
            const MetricsEstimate e = fx.run(dim, mu, Scheme::majority_vote(b, obj));
            fx.out << mu << ',';
            if (rho) fx.out << *rho / fx.R;
            fx.out << ',' << b << ',' << analytic_metric(c, mu, b) << ',' << e.mean << ',' << e.std_error
                   << ',' << e.n_kept << ',' << star.lo << ',' << star.hi << '\n';
        }
    }
}

void scheme_row(const FigureContext& fx, double mu, const std::optional<double>& gamma_db, const char* name,
                double beta, const MetricsEstimate& e, const std::optional<double>& analytic)
{
    fx.out << mu << ',';
    if (gamma_db) fx.out << *gamma_db;
    fx.out << ',' << name << ',' << beta << ',' << e.mean << ',' << e.std_error << ',' << e.n_kept << ',';
    if (analytic) fx.out << *analytic;
    fx.out << '\n';
}

void scheme_figure(const FigureContext& fx, Dimension dim, bool success)
{
    fx.out << "mu,gamma_th_db,scheme,beta,mean,std_error,n_kept,analytic\n";
    std::vector<std::optional<double>> gammas;
    if (success) {
        for (double g : fx.cfg.gamma_th_db_list) gammas.emplace_back(g);
    } else {
        gammas.emplace_back(std::nullopt);
    }
    const int pk_grid = dim == Dimension::OneD ? fx.cfg.pk_grid : fx.cfg.pk_grid_2d;
    for (double mu : fx.cfg.mu_list) {
        for (const auto& g : gammas) {
            const ExperimentConfig c = fx.with(dim, g);
            const Objective obj = c.objective();
            const double b = analytic_beta_star(c, mu).mid();
            scheme_row(fx, mu, g, "non_adaptive", 0.0, fx.run(dim, mu, Scheme::non_adaptive(obj)),
                       analytic_metric(c, mu, 0.0));
            scheme_row(fx, mu, g, "majority_vote", b, fx.run(dim, mu, Scheme::majority_vote(b, obj)),
                       analytic_metric(c, mu, b));
            if (dim == Dimension::OneD) {
                scheme_row(fx, mu, g, "exact_number", 0.0, fx.run(dim, mu, Scheme::exact_number(obj)),
                           std::nullopt);
            }
            const bool pk_ok = !success || !is_zero_coverage(coverage_radius(fx.params, obj.gamma_th));
            if (pk_ok) {
                scheme_row(fx, mu, g, "perfect_knowledge", 0.0,
                           fx.run(dim, mu, Scheme::perfect_knowledge(obj, pk_grid)), std::nullopt);
            }
        }
    }
}

void fig6a(const FigureContext& fx)
{
    const double step = 0.02;
    fx.out << "mu,beta_star_root,beta_star_quadrature_argmax,beta_star_mc_argmax,mc_grid_step\n";
    for (double mu : fx.cfg.mu_list) {
        const double root = optimal_beta_throughput_2d(mu, fx.params, fx.R);
        const auto gm = numerics::golden_max(
            [&](double b) { return avg_throughput_2d(b, mu, fx.params, fx.R); }, 0.0, 0.5, 1e-6);
        double best_b = 0.0, best_m = -1.0;
        for (double b : grid(0.0, 0.6, step)) {
            const double m = fx.run(Dimension::TwoD, mu, Scheme::majority_vote(b)).mean;
            if (m > best_m) best_m = m, best_b = b;
        }
        fx.out << mu << ',' << root << ',' << gm.argmax << ',' << best_b << ',' << step << '\n';
    }
}

void fig7a(const FigureContext& fx)
{
    fx.out << "mu,rho_over_r,beta_lo,beta_hi,regime,grid_argmax,low_load,high_load\n";
    for (double mu : fx.cfg.mu_list) {
        const DisplacementProbs probs = displacement_probs_2d(mu);
        for (double r : grid(0.05, 1.5, 0.05)) {
            const double rho = r * fx.R;
            const auto s = optimal_beta_success_2d(rho, mu, fx.R);
            double gb = 0.0, gp = -1.0;
            for (int i = 0; i <= 2000; ++i) {
                const double b = i / 2000.0;
                const double p = success_prob_2d(b, rho, fx.R, probs);
                if (p > gp + 1e-13) gp = p, gb = b;
            }
            const BetaSet lo = asymptotic_beta_success_2d(rho, LoadRegime::LowLoad, fx.R);
            const BetaSet hi = asymptotic_beta_success_2d(rho, LoadRegime::HighLoad, fx.R);
            fx.out << mu << ',' << r << ',' << s.beta.lo << ',' << s.beta.hi << ','
                   << static_cast<int>(s.regime) << ',' << gb << ',' << lo.mid() << ',' << hi.mid() << '\n';
        }
    }
}

void fig8(const FigureContext& fx)
{
    const int n = fx.cfg.multi_uav_n.value_or(10);
    fx.out << "mu,beta,single_mean,single_std_error,multi_mean,multi_std_error,n_kept,n_side_cells\n";
    for (double mu : fx.cfg.mu_list) {
        const CellGeometry cell = CellGeometry::from_mean_load(Dimension::OneD, fx.R, mu);
        for (double b : grid(0.0, 0.5, 0.02)) {
            const MetricsEstimate s =
                run_scheme(cell, fx.params, Scheme::majority_vote(b), fx.cfg.realizations, fx.cfg.seed, fx.threads);
            const MetricsEstimate m =
                multi_uav_1d(cell, fx.params, b, n, fx.cfg.realizations, fx.cfg.seed, fx.threads);
            fx.out << mu << ',' << b << ',' << s.mean << ',' << s.std_error << ',' << m.mean << ','
                   << m.std_error << ',' << m.n_kept << ',' << n << '\n';
        }
    }
}

}  // namespace

std::vector<std::string> figure_names()
{
    return {"fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b", "fig7a", "fig7b", "fig8"};
}

int cmd_figure(const std::string& name, const ExperimentConfig& cfg, unsigned threads, std::ostream& out)
{
    const auto names = figure_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError("figure", "unknown figure '" + name + "'");
    }
    out << std::setprecision(12);
    write_csv_metadata(out, cfg.seed, cfg.realizations, name);
    const FigureContext fx(cfg, threads, out);
    if (name == "fig4a") curve_figure(fx, Dimension::OneD, false);
    else if (name == "fig4b") scheme_figure(fx, Dimension::OneD, false);
    else if (name == "fig5a") curve_figure(fx, Dimension::OneD, true);
    else if (name == "fig5b") scheme_figure(fx, Dimension::OneD, true);
    else if (name == "fig6a") fig6a(fx);
    else if (name == "fig6b") scheme_figure(fx, Dimension::TwoD, false);
    else if (name == "fig7a") fig7a(fx);
    else if (name == "fig7b") scheme_figure(fx, Dimension::TwoD, true);
    else fig8(fx);
    return kExitOk;
}

}  // namespace uavdeploy::cli
