// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support/oracles.hpp"
#include "uavdeploy/analytic_1d.hpp"
#include "uavdeploy/analytic_2d.hpp"
#include "uavdeploy/montecarlo.hpp"
#include "uavdeploy/ppp_sampler.hpp"

using namespace uavdeploy;

namespace {

const double R = 1000.0;

// Collects the sub-checks of one criterion.
class Criterion {
public:
    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass_ = false;
            if (failures_.size() < 4) failures_.push_back(what);
            else ++hidden_;
        }
    }
    bool passed() const { return pass_; }
    std::string detail() const
    {
        std::string s;
        for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
        if (hidden_ > 0) s += "; +" + std::to_string(hidden_) + " more";
        return s;
    }

private:
    bool pass_ = true;
    std::vector<std::string> failures_;
    int hidden_ = 0;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    std::array<char, 256> buf{};
    std::snprintf(buf.data(), buf.size(), f, a, b, c, d);
    return buf.data();
}

double seconds_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::uint64_t total_for_kept(double mu, double kept)
{
    return static_cast<std::uint64_t>(std::ceil(1.01 * kept / -std::expm1(-mu)));
}

bool within_3se(double est, double se, double ref) { return std::abs(est - ref) <= 3.0 * se; }

// ---------------------------------------------------------------------------

Criterion c1_sparse_and_heavy_limits()
{
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto lo = displacement_probs_1d(1e-4);
    c.check(lo.q[1] >= 0.4999 && lo.q[1] <= 0.5, fmt("mu=1e-4 q1=%.6f", lo.q[1]));
    c.check(lo.q[2] < 1e-4, fmt("mu=1e-4 q2=%.3g", lo.q[2]));
    const auto hi = displacement_probs_1d(100.0);
    c.check(std::abs(hi.q[1] - 0.25) < 0.01, fmt("mu=100 |q1-0.25|=%.5f", std::abs(hi.q[1] - 0.25)));
    c.check(std::abs(hi.q[2] - 0.25) < 0.01, fmt("mu=100 |q2-0.25|=%.5f", std::abs(hi.q[2] - 0.25)));
    c.check(seconds_since(t0) < 1.0, fmt("runtime %.2fs", seconds_since(t0)));
    return c;
}

Criterion c2_probs_1d_vs_simulation()
{
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    for (double mu : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const auto p = displacement_probs_1d(mu);
        const auto cell = CellGeometry::from_mean_load(Dimension::OneD, R, mu);
        const auto e = empirical_displacement_probs(cell, 0.3, total_for_kept(mu, 1e6), 1000 + static_cast<int>(mu * 10), 0);
        c.check(e.n_kept >= 1000000, fmt("mu=%g kept=%g", mu, static_cast<double>(e.n_kept)));
        for (int j = 0; j < 3; ++j) {
            c.check(within_3se(e.q[j], e.std_error[j], p.q[j]),
                    fmt("mu=%g q%g dev=%.2f se", mu, j, std::abs(e.q[j] - p.q[j]) / e.std_error[j]));
        }
    }
    c.check(seconds_since(t0) < 120.0, fmt("runtime %.1fs", seconds_since(t0)));
    return c;
}

Criterion c3_terms_vs_quadrature()
{
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double beta = u(rng);
        const auto params =
            SystemParams::from_engineering(1.0 + 30.0 * u(rng), 30.0 + 270.0 * u(rng), -47.0 - 3.0 * u(rng), -115.0 + 10.0 * u(rng));
        const double half = 200.0 + 2000.0 * u(rng);
        const double a = params.link_budget(), h = params.altitude();
        auto L = [&](double x) { return std::log2(1.0 + a / (x * x + h * h)); };
        const auto t = throughput_terms(beta, params, half);
        const std::array<std::pair<double, double>, 4> pairs{{
            {t.zeta, oracle::gauss_legendre(L, (beta - 1.0) * half, 0.0) / half},
            {t.kappa_term, oracle::gauss_legendre(L, 0.0, beta * half) / half},
            {t.xi, oracle::gauss_legendre(L, 0.0, (1.0 + beta) * half) / half},
            {t.vartheta, oracle::gauss_legendre(L, 0.0, half) / half},
        }};
        for (const auto& [closed, quad] : pairs) {
            const double rel = quad == 0.0 ? std::abs(closed) : std::abs(closed - quad) / std::abs(quad);
            worst = std::max(worst, rel);
        }
    }
    c.check(worst <= 1e-8, fmt("worst rel=%.2e", worst));
    c.check(seconds_since(t0) < 10.0, fmt("runtime %.1fs", seconds_since(t0)));
    return c;
}

Criterion c4_beta_star_1d()
{
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto params = SystemParams::reference();
    const double lo = optimal_beta_throughput_1d(1e-4, params, R);
    c.check(std::abs(lo - 0.5) <= 1e-3, fmt("beta*(1e-4)=%.6f", lo));
    const double hi = optimal_beta_throughput_1d(1000.0, params, R);
    c.check(hi < 0.02, fmt("beta*(1000)=%.5f", hi));
    double prev = 2.0;
    for (double mu : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double b = optimal_beta_throughput_1d(mu, params, R);
        c.check(b < prev, fmt("not decreasing at mu=%g", mu));
        prev = b;
    }
    c.check(seconds_since(t0) < 5.0, fmt("runtime %.1fs", seconds_since(t0)));
    return c;
}

Criterion c5_success_1d_vs_simulation()
{
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto params = SystemParams::reference();
    std::uint64_t seed = 500;
    for (double mu : {0.5, 2.0, 8.0}) {
        const auto cell = CellGeometry::from_mean_load(Dimension::OneD, R, mu);
        for (double r : {0.25, 0.45, 0.75}) {
            const double rho = r * R;
            const auto obj = Objective::success_prob(snr(params, rho));
            for (double beta : {0.0, 0.2, 0.4, 0.6, 0.9}) {
                const auto e = run_scheme(cell, params, Scheme::majority_vote(beta, obj), total_for_kept(mu, 1e6), ++seed, 0);
                const double p = success_prob_1d(beta, rho, mu, R);
                c.check(within_3se(e.mean, e.std_error, p),
                        fmt("mu=%g rho=%gR beta=%g dev=%.2f se", mu, r, beta, std::abs(e.mean - p) / e.std_error));
            }
        }
    }
    c.check(seconds_since(t0) < 300.0, fmt("runtime %.1fs", seconds_since(t0)));
    return c;
}

Criterion c6_flat_optimum_1d()
{
    Criterion c;
    const double mu = 2.0;
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double p = success_prob_1d(0.3 + 0.4 * i / 400.0, 0.3 * R, mu, R);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    c.check(hi - lo < 1e-10, fmt("spread=%.2e", hi - lo));
    for (double b : {0.1, 0.9}) {
        c.check(success_prob_1d(b, 0.3 * R, mu, R) < lo, fmt("beta=%g not lower", b));
    }
    const double arg = oracle::grid_argmax([&](double b) { return success_prob_1d(b, 0.75 * R, mu, R); }, 0.0, 1.0, 2001);
    c.check(std::abs(arg - 0.25) <= 1e-3, fmt("rho=0.75R argmax=%.4f", arg));
    return c;
}

Criterion c7_dominance()
{
    Criterion c;
    const auto params = SystemParams::reference();
    for (double mu : {0.2, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double b = optimal_beta_throughput_1d(mu, params, R);
        c.check(avg_throughput_1d(b, mu, params, R) >= avg_throughput_1d(0.0, mu, params, R), fmt("throughput mu=%g", mu));
        const auto cell = CellGeometry::from_mean_load(Dimension::OneD, R, mu);
        const auto adaptive = run_scheme(cell, params, Scheme::majority_vote(b), 100000, 70, 0);
        const auto fixed = run_scheme(cell, params, Scheme::non_adaptive(), 100000, 70, 0);
        c.check(adaptive.mean - fixed.mean >= -3.0 * adaptive.std_error, fmt("simulated throughput mu=%g", mu));
        for (double r : {0.1, 0.3, 0.5, 0.6, 0.8, 0.95}) {
            const BetaSet s = optimal_beta_success_1d(r * R, R);
            const double pa = success_prob_1d(s.mid(), r * R, mu, R), p0 = success_prob_1d(0.0, r * R, mu, R);
            c.check(pa > p0, fmt("success mu=%g rho=%gR", mu, r));
            const auto obj = Objective::success_prob(snr(params, r * R));
            const auto sa = run_scheme(cell, params, Scheme::majority_vote(s.mid(), obj), 100000, 71, 0);
            const auto s0 = run_scheme(cell, params, Scheme::non_adaptive(obj), 100000, 71, 0);
            c.check(sa.mean - s0.mean >= -3.0 * sa.std_error, fmt("simulated success mu=%g rho=%gR", mu, r));
        }
    }
    return c;
}

Criterion c8_probs_2d()
{
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    for (double mu : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
        const auto a = displacement_probs_2d(mu, 2), b = displacement_probs_1d(mu);
        for (int j = 0; j < 3; ++j) c.check(std::abs(a.q[j] - b.q[j]) <= 1e-9, fmt("M=2 mu=%g q%g", mu, j));
    }
    const auto lo = displacement_probs_2d(1e-4);
    c.check(std::abs(lo.q[1] - 0.25) <= 0.005, fmt("mu=1e-4 q1=%.5f", lo.q[1]));
    const auto hi = displacement_probs_2d(200.0);
    for (int j = 1; j <= 4; ++j) {
        c.check(std::abs(hi.q[j] - 1.0 / 16.0) <= 0.005, fmt("mu=200 |q%g-1/16|=%.4f", j, std::abs(hi.q[j] - 1.0 / 16.0)));
    }
    const auto p = displacement_probs_2d(4.0);
    const auto cell = CellGeometry::from_mean_load(Dimension::TwoD, R, 4.0);
    const auto e = empirical_displacement_probs(cell, 0.3, total_for_kept(4.0, 1e6), 804, 0);
    for (int j = 0; j < 5; ++j) {
        c.check(within_3se(e.q[j], e.std_error[j], p.q[j]), fmt("mu=4 q%g dev=%.2f se", j, std::abs(e.q[j] - p.q[j]) / e.std_error[j]));
    }
    c.check(seconds_since(t0) < 300.0, fmt("runtime %.1fs", seconds_since(t0)));
    return c;
}

Criterion c9_beta_star_2d()
{
    Criterion c;
    const auto params = SystemParams::reference();
    for (double mu : {0.5, 4.0, 50.0}) {
        const double root = optimal_beta_throughput_2d(mu, params, R);
        const auto gm = numerics::golden_max([&](double b) { return avg_throughput_2d(b, mu, params, R, 1e-11); }, 0.0, 1.0, 1e-7);
        c.check(std::abs(root - gm.argmax) <= 1e-4, fmt("mu=%g root=%.6f argmax=%.6f", mu, root, gm.argmax));
    }
    const double lo = optimal_beta_throughput_2d(1e-4, params, R);
    c.check(std::abs(lo - 0.5) <= 1e-3, fmt("beta*(1e-4)=%.6f", lo));
    const double hi = optimal_beta_throughput_2d(1000.0, params, R);
    c.check(hi < 0.02, fmt("beta*(1000)=%.5f", hi));
    return c;
}

Criterion c10_success_optimum_2d()
{
    Criterion c;
    for (double mu : {1e-4, 4.0, 500.0}) {
        const auto probs = displacement_probs_2d(mu);
        for (double r : {0.3, 0.6, 0.8, 1.0, 1.3}) {
            const auto opt = optimal_beta_success_2d(r * R, mu, R);
            const double grid =
                oracle::grid_argmax([&](double b) { return success_prob_2d(b, r * R, R, probs); }, 0.0, 1.0, 2001);
            c.check(opt.beta.distance(grid) <= 2e-3, fmt("mu=%g rho=%gR grid=%.4f prop=%.4f", mu, r, grid, opt.beta.mid()));
            if (mu == 1e-4 || mu == 500.0) {
                const auto regime = mu == 1e-4 ? LoadRegime::LowLoad : LoadRegime::HighLoad;
                const auto ref = asymptotic_beta_success_2d(r * R, regime, R);
                c.check(std::abs(opt.beta.mid() - ref.mid()) <= 5e-3,
                        fmt("mu=%g rho=%gR asymptote=%.4f prop=%.4f", mu, r, ref.mid(), opt.beta.mid()));
            }
        }
    }
    return c;
}

Criterion c11_exact_number()
{
    Criterion c;
    const auto params = SystemParams::reference();
    std::mt19937_64 rng(1111);
    std::uniform_int_distribution<int> k(0, 12);
    int tested = 0;
    while (tested < 20) {
        const int k1 = k(rng), k2 = k(rng);
        if (k1 == k2 || k1 + k2 == 0) continue;
        ++tested;
        const double b = exact_number_beta_1d(k1, k2, params, R);
        const double g =
            oracle::ternary_argmax([&](double x) { return exact_number_throughput_1d(x, k1, k2, params, R); }, 0.0, 1.0);
        c.check(std::abs(b - g) <= 1e-6, fmt("K=(%g,%g) root=%.7f argmax=%.7f", k1, k2, b, g));
    }
    for (int m = 1; m <= 6; ++m) c.check(exact_number_beta_1d(m, m, params, R) == 0.0, fmt("K1=K2=%g", m));
    return c;
}

Criterion c12_scheme_ordering()
{
    Criterion c;
    const auto params = SystemParams::reference();
    for (double mu : {0.2, 1.0, 2.0}) {
        const auto cell = CellGeometry::from_mean_load(Dimension::OneD, R, mu);
        const double b = optimal_beta_throughput_1d(mu, params, R);
        const auto pk = run_scheme(cell, params, Scheme::perfect_knowledge(), 100000, 1200, 0);
        const auto en = run_scheme(cell, params, Scheme::exact_number(), 100000, 1200, 0);
        const auto mv = run_scheme(cell, params, Scheme::majority_vote(b), 100000, 1200, 0);
        const auto na = run_scheme(cell, params, Scheme::non_adaptive(), 100000, 1200, 0);
        c.check(pk.mean - en.mean >= -pk.std_error, fmt("mu=%g PK %.4f < EN %.4f", mu, pk.mean, en.mean));
        c.check(en.mean - mv.mean >= -en.std_error, fmt("mu=%g EN %.4f < MV %.4f", mu, en.mean, mv.mean));
        c.check(mv.mean - na.mean >= -mv.std_error, fmt("mu=%g MV %.4f < NA %.4f", mu, mv.mean, na.mean));
    }
    return c;
}

Criterion c13_multi_uav()
{
    Criterion c;
    const auto params = SystemParams::reference();
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, R, 2.0);
    double best = -1.0, best_beta = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double b = i * 0.01;
        const double m = multi_uav_1d(cell, params, b, 10, 100000, 1300, 0).mean;
        if (m > best) best = m, best_beta = b;
    }
    const double single = optimal_beta_throughput_1d(2.0, params, R);
    c.check(single - best_beta > 0.02, fmt("multi argmax=%.2f single=%.4f", best_beta, single));
    return c;
}

struct ToolRun {
    int status;
    std::string out;
};

ToolRun run_tool(const std::string& args)
{
    const std::string cmd = std::string(UAVDEPLOY_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

Criterion c14_determinism()
{
    Criterion c;
    const std::vector<std::string> runs{
        "--seed 14 --realizations 200000 simulate",
        "--seed 15 --realizations 50000 --config " UAVDEPLOY_TEST_DATA "/config_2d.json simulate",
        "--seed 16 --realizations 20000 --config " UAVDEPLOY_TEST_DATA "/config_sweep.json simulate",
        "--seed 17 --realizations 20000 --config " UAVDEPLOY_TEST_DATA "/config_multi.json simulate",
        "--seed 18 --realizations 20000 --config " UAVDEPLOY_TEST_DATA "/config_pk.json simulate",
    };
    for (const auto& args : runs) {
        const auto ref = run_tool("--threads 1 " + args);
        c.check(ref.status == 0 && !ref.out.empty(), "run failed: " + args);
        for (int t : {2, 5, 16}) {
            const auto other = run_tool("--threads " + std::to_string(t) + " " + args);
            c.check(other.status == 0 && other.out == ref.out, "threads=" + std::to_string(t) + " differs: " + args);
        }
    }
    return c;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria{
        {"sparse and heavy load displacement limits (1D)", c1_sparse_and_heavy_limits},
        {"1D displacement probabilities vs simulation", c2_probs_1d_vs_simulation},
        {"throughput terms vs quadrature", c3_terms_vs_quadrature},
        {"1D throughput optimum limits and monotonicity", c4_beta_star_1d},
        {"1D success probability vs simulation", c5_success_1d_vs_simulation},
        {"1D flat success optimum", c6_flat_optimum_1d},
        {"adaptive dominates non-adaptive", c7_dominance},
        {"2D displacement probabilities", c8_probs_2d},
        {"2D throughput optimum", c9_beta_star_2d},
        {"2D success optimum vs grid and asymptotes", c10_success_optimum_2d},
        {"exact user number optimum", c11_exact_number},
        {"scheme ordering", c12_scheme_ordering},
        {"multi-UAV optimum below single-UAV optimum", c13_multi_uav},
        {"thread-count determinism of simulate", c14_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        failed += !c.passed();
        std::cout << (c.passed() ? "PASS " : "FAIL ") << (i + 1 < 10 ? " " : "") << i + 1 << "  " << criteria[i].first
                  << fmt("  (%.1fs)", seconds_since(t0));
        if (!c.passed()) std::cout << "  " << c.detail();
        std::cout << std::endl;
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
