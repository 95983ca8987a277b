#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <ostream>
#include <string>
#include <vector>

#include "uavdeploy/analytic_2d.hpp"
#include "uavdeploy/cli/commands.hpp"
#include "uavdeploy/montecarlo.hpp"
#include "uavdeploy/numerics.hpp"
#include "uavdeploy/parallel.hpp"
#include "uavdeploy/version.hpp"

namespace uavdeploy::cli {

namespace {

struct Check {
    std::string name;
    std::string tolerance;
    double deviation;
    bool pass;
};

// Deviation in standard errors; zero error only matches an exact hit.
double z_score(double estimate, double std_error, double reference)
{
    const double d = std::abs(estimate - reference);
    if (std_error > 0.0) return d / std_error;
    return d == 0.0 ? 0.0 : INFINITY;
}

Check sigma_check(const std::string& name, double z) { return {name, "3 std errors", z, z <= 3.0}; }

Check abs_check(const std::string& name, double dev, double tol)
{
    std::ostringstream t;
    t << "abs " << tol;
    return {name, t.str(), dev, dev <= tol};
}

Check rel_check(const std::string& name, double dev, double tol)
{
    std::ostringstream t;
    t << "rel " << tol;
    return {name, t.str(), dev, dev <= tol};
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::uint64_t total_for_kept(double mu, std::uint64_t kept)
{
    return static_cast<std::uint64_t>(std::ceil(static_cast<double>(kept) / -std::expm1(-mu)));
}

}  // namespace

std::vector<std::string> mutation_names() { return {"theta_db", "probs"}; }

int cmd_validate(const ValidateOptions& opts, std::ostream& out)
{
    if (opts.mutation) {
        const auto names = mutation_names();
        if (std::find(names.begin(), names.end(), *opts.mutation) == names.end()) {
            throw ConfigError("--mutate", "unknown mutation '" + *opts.mutation + "'");
        }
    }
    const bool mutate_theta = opts.mutation == "theta_db";
    const bool mutate_probs = opts.mutation == "probs";

    const SystemParams params = SystemParams::reference();
    // Closed forms are evaluated with these, Monte Carlo always with the reference.
    const SystemParams analytic_params =
        mutate_theta ? SystemParams::from_engineering(10.0, 100.0, -46.5, -110.0) : params;
    const double R = 1000.0;
    const std::uint64_t kept = opts.full ? 1000000 : 200000;
    const std::uint64_t seed = opts.seed;
    const unsigned threads = opts.threads;

    auto shifted = [&](DisplacementProbs p) {
        if (mutate_probs) {
            p.q[1] += 0.01;
            p.q[0] -= 0.01;
        }
        return p;
    };
    auto cell1 = [&](double mu) { return CellGeometry::from_mean_load(Dimension::OneD, R, mu); };
    auto cell2 = [&](double mu) { return CellGeometry::from_mean_load(Dimension::TwoD, R, mu); };

    std::vector<std::function<Check()>> battery;

    battery.emplace_back([&] {
        const double a = 0.01 * std::pow(10.0, -4.7) / 1e-14;
        return rel_check("snr_at_zero_distance", rel_dev(snr(params, 0.0), a / 1e4), 1e-12);
    });
    battery.emplace_back([&] {
        const double a = 0.01 * std::pow(10.0, -4.7) / 1e-14;
        const double rho = *radius_meters(coverage_radius(params, 100.0));
        return rel_check("coverage_radius_20db", rel_dev(rho, std::sqrt(a / 100.0 - 1e4)), 1e-12);
    });
    battery.emplace_back([&] {
        const auto p = displacement_probs_1d(2.0);
        return abs_check("probs_1d_closure_mu2", std::abs(p.sum() - 0.5),
                         p.truncation_error_bound + 1e-14);
    });
    battery.emplace_back([&] {
        const auto p = shifted(displacement_probs_1d(2.0));
        const auto e = empirical_displacement_probs(cell1(2.0), 0.3, total_for_kept(2.0, kept), seed, threads);
        double z = 0.0;
        for (int j = 0; j <= 2; ++j) z = std::max(z, z_score(e.q[j], e.std_error[j], p.q[j]));
        return sigma_check("probs_1d_vs_simulation_mu2", z);
    });
    battery.emplace_back([&] {
        const double beta = 0.3;
        const auto t = throughput_terms(beta, params, R);
        const double a = params.link_budget(), h2 = params.altitude() * params.altitude();
        auto L = [&](double x) { return std::log2(1.0 + a / (x * x + h2)); };
        auto q = [&](double lo, double hi) { return numerics::quad_1d(L, lo, hi, 1e-12).value / R; };
        const double dev = std::max({rel_dev(t.zeta, q((beta - 1) * R, 0.0)), rel_dev(t.kappa_term, q(0.0, beta * R)),
                                     rel_dev(t.xi, q(0.0, (1 + beta) * R)), rel_dev(t.vartheta, q(0.0, R))});
        return rel_check("throughput_terms_vs_quadrature", dev, 1e-8);
    });
    battery.emplace_back([&] {
        const auto e = run_scheme(cell1(2.0), params, Scheme::majority_vote(0.3), total_for_kept(2.0, kept), seed,
                                  threads);
        return sigma_check("throughput_1d_vs_simulation_mu2",
                           z_score(e.mean, e.std_error, avg_throughput_1d(0.3, 2.0, analytic_params, R)));
    });
    battery.emplace_back([&] {
        const double root = optimal_beta_throughput_1d(2.0, analytic_params, R);
        const auto gm = numerics::golden_max(
            [&](double b) { return avg_throughput_1d(b, 2.0, params, R); }, 0.0, 1.0, 1e-10);
        return abs_check("beta_star_1d_root_vs_golden", std::abs(root - gm.argmax), 1e-6);
    });
    battery.emplace_back([&] {
        const double rho = 0.6 * R;
        const double gamma = snr(params, rho);
        const auto e = run_scheme(cell1(2.0), params, Scheme::majority_vote(0.3, Objective::success_prob(gamma)),
                                  total_for_kept(2.0, kept), seed, threads);
        const auto p = shifted(displacement_probs_1d(2.0));
        return sigma_check("success_1d_vs_simulation_mu2",
                           z_score(e.mean, e.std_error, success_prob_1d(0.3, rho, R, p.q[0], p.q[1], p.q[2])));
    });
    battery.emplace_back([&] {
        double lo = INFINITY, hi = -INFINITY;
        for (int i = 0; i <= 400; ++i) {
            const double p = success_prob_1d(0.3 + 0.4 * i / 400.0, 0.3 * R, 2.0, R);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        return abs_check("success_1d_flat_optimal_interval", hi - lo, 1e-10);
    });
    battery.emplace_back([&] {
        double dev = 0.0;
        for (double mu : {0.1, 1.0, 4.0, 20.0}) {
            dev = std::max(dev, std::abs(displacement_probs_2d(mu, 2).q[1] - displacement_probs_1d(mu).q[1]));
        }
        return abs_check("probs_2d_two_sector_reduction", dev, 1e-9);
    });
    battery.emplace_back([&] {
        const auto p = shifted(displacement_probs_2d(4.0));
        const auto e = empirical_displacement_probs(cell2(4.0), 0.3, total_for_kept(4.0, kept), seed, threads);
        double z = 0.0;
        for (int j = 0; j <= 4; ++j) z = std::max(z, z_score(e.q[j], e.std_error[j], p.q[j]));
        return sigma_check("probs_2d_vs_simulation_mu4", z);
    });
    battery.emplace_back([&] {
        const auto e = run_scheme(cell2(4.0), params, Scheme::majority_vote(0.3), total_for_kept(4.0, kept), seed,
                                  threads);
        return sigma_check("throughput_2d_vs_simulation_mu4",
                           z_score(e.mean, e.std_error, avg_throughput_2d(0.3, 4.0, analytic_params, R)));
    });
    battery.emplace_back([&] {
        const double root = optimal_beta_throughput_2d(4.0, analytic_params, R);
        const auto gm = numerics::golden_max(
            [&](double b) { return avg_throughput_2d(b, 4.0, params, R, 1e-11); }, 0.0, 0.5, 1e-7);
        return abs_check("beta_star_2d_root_vs_quadrature_argmax", std::abs(root - gm.argmax), 1e-4);
    });
    battery.emplace_back([&] {
        const Point anchor{0.3 * R, 0.3 * R};
        const double rho = 0.6 * R;
        const std::uint64_t n = opts.full ? 10000000 : 1000000;
        const Moments m = run_blocks<Moments>(n, seed + 7, threads, [&](Rng& rng, std::uint64_t count) {
            std::uniform_real_distribution<double> u(0.0, R);
            Moments block;
            for (std::uint64_t i = 0; i < count; ++i) {
                const double dx = u(rng) - anchor.x, dy = u(rng) - anchor.y;
                block.add(dx * dx + dy * dy <= rho * rho ? 1.0 : 0.0);
            }
            return block;
        });
        return sigma_check("coverage_fraction_vs_point_sampling",
                           z_score(m.mean(), m.std_error(), sector_coverage_fraction(anchor, rho, R)));
    });
    battery.emplace_back([&] {
        const double rho = 0.8 * R;
        const auto e = run_scheme(cell2(4.0), params,
                                  Scheme::majority_vote(0.2, Objective::success_prob(snr(params, rho))),
                                  total_for_kept(4.0, kept), seed, threads);
        return sigma_check("success_2d_vs_simulation_mu4",
                           z_score(e.mean, e.std_error, success_prob_2d(0.2, rho, R, shifted(displacement_probs_2d(4.0)))));
    });
    battery.emplace_back([&] {
        const double rho = 0.9 * R;
        const auto probs = displacement_probs_2d(4.0);
        double gb = 0.0, gp = -1.0;
        for (int i = 0; i <= 2000; ++i) {
            const double b = i / 2000.0, p = success_prob_2d(b, rho, R, probs);
            if (p > gp + 1e-13) gp = p, gb = b;
        }
        return abs_check("success_2d_optimum_vs_grid_argmax",
                         optimal_beta_success_2d(rho, 4.0, R).beta.distance(gb), 2e-3);
    });
    battery.emplace_back([&] {
        const double b = optimal_beta_success_2d(R, 1e-4, R).beta.mid();
        return abs_check("success_2d_optimum_low_load_limit", std::abs(b - (1.0 - 1.0 / std::sqrt(2.0))), 5e-3);
    });
    battery.emplace_back([&] {
        const double b = exact_number_beta_1d(3, 1, analytic_params, R);
        const auto gm = numerics::golden_max(
            [&](double x) { return exact_number_throughput_1d(x, 3, 1, params, R); }, 0.0, 0.5, 1e-10);
        return abs_check("exact_number_beta_vs_golden", std::abs(b - gm.argmax), 1e-6);
    });
    battery.emplace_back([&] {
        const auto a = run_scheme(cell1(1.0), params, Scheme::non_adaptive(), 50000, seed, threads);
        const auto b = run_scheme(cell1(1.0), params, Scheme::majority_vote(0.0), 50000, seed, threads);
        return abs_check("non_adaptive_equals_zero_displacement", std::abs(a.mean - b.mean), 0.0);
    });
    battery.emplace_back([&] {
        const auto a = run_scheme(cell2(2.0), params, Scheme::majority_vote(0.4), 100000, seed, 1);
        const auto b = run_scheme(cell2(2.0), params, Scheme::majority_vote(0.4), 100000, seed, 4);
        const double dev = std::abs(a.mean - b.mean) + std::abs(a.std_error - b.std_error) +
                           static_cast<double>(a.n_kept != b.n_kept);
        return abs_check("thread_count_determinism", dev, 0.0);
    });

    out << "# " << kToolName << ' ' << kToolVersion << " validate level=" << (opts.full ? "full" : "fast")
        << " seed=" << seed << " kept_realizations=" << kept;
    if (opts.mutation) out << " mutation=" << *opts.mutation;
    out << '\n' << std::setprecision(6);
    int failed = 0;
    for (const auto& run : battery) {
        const Check c = run();
        if (!c.pass) ++failed;
        out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(44) << c.name << " deviation=" << std::setw(12)
            << c.deviation << " tolerance=" << c.tolerance << '\n';
    }
    out << battery.size() - failed << '/' << battery.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace uavdeploy::cli
