#include "uavdeploy/analytic_2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "uavdeploy/geometry.hpp"

namespace uavdeploy {

namespace {

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// For each possible maximum count m in sector 1, the other sectors hold at
// most m - 1 users. conv_{n}(s) is the probability that n such sectors hold s
// users in total, all below m.
DisplacementProbs compute_probs_2d(double mu, int sectors, double tol)
{
    const double lam = mu / sectors;
    const double p_nonempty = -std::expm1(-mu);
    const long t_max =
        std::max<long>(1, numerics::poisson_quantile_upper(lam, tol * p_nonempty / sectors));

    std::vector<double> pmf(static_cast<std::size_t>(t_max) + 1);
    for (long k = 0; k <= t_max; ++k) pmf[k] = std::exp(numerics::poisson_pmf_log(k, lam));

    double s1 = 0.0, s2 = 0.0;
    for (long m = 1; m <= t_max; ++m) {
        const std::vector<double> trunc(pmf.begin(), pmf.begin() + m);
        std::vector<double> rest{1.0};  // M - 2 other sectors
        for (int i = 0; i < sectors - 2; ++i) rest = convolve(rest, trunc);
        const std::vector<double> all = convolve(rest, trunc);  // M - 1 other sectors

        const double md = static_cast<double>(m);
        double inner1 = 0.0;
        for (std::size_t s = 0; s < all.size(); ++s) inner1 += all[s] * md / (md + s);
        s1 += pmf[m] * inner1;

        // Typical user in sector 1 with l < m users, sector j wins with m.
        double inner2 = 0.0;
        for (long l = 1; l < m; ++l) {
            const double ld = static_cast<double>(l);
            double acc = 0.0;
            for (std::size_t s = 0; s < rest.size(); ++s) acc += rest[s] * ld / (md + ld + s);
            inner2 += pmf[l] * acc;
        }
        s2 += pmf[m] * inner2;
    }

    DisplacementProbs p;
    p.mu = mu;
    const double q1 = s1 / p_nonempty;
    const double qj = s2 / p_nonempty;
    p.q.assign(static_cast<std::size_t>(sectors) + 1, qj);
    p.q[1] = q1;
    p.q[0] = 1.0 / sectors - q1 - (sectors - 1) * qj;
    p.truncation_error_bound =
        sectors * numerics::poisson_upper_tail(t_max, lam) / p_nonempty;
    return p;
}

std::mutex probs_mutex;
std::map<std::tuple<double, int, double>, DisplacementProbs> probs_cache;

void require_beta(double beta)
{
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
}

// Anchors U_1..U_4 scaled by beta R, U_0 at the origin.
std::array<Point, 5> anchors(double beta, double R)
{
    const double d = beta * R;
    return {Point{0.0, 0.0}, Point{d, d}, Point{-d, d}, Point{-d, -d}, Point{d, -d}};
}

double clamped_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

DisplacementProbs displacement_probs_2d(double mu, int sectors, double tol)
{
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be finite and > 0");
    if (sectors < 2) throw std::invalid_argument("sector count must be >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("truncation tolerance must be > 0");
    const auto key = std::make_tuple(mu, sectors, tol);
    {
        std::lock_guard lock(probs_mutex);
        if (auto it = probs_cache.find(key); it != probs_cache.end()) return it->second;
    }
    DisplacementProbs p = compute_probs_2d(mu, sectors, tol);
    std::lock_guard lock(probs_mutex);
    probs_cache.emplace(key, p);
    return p;
}

SpecialFunctions::SpecialFunctions(const SystemParams& params, double half_width)
    : a_(params.link_budget()), h2_(params.altitude() * params.altitude()), R_(half_width)
{
    if (!(half_width > 0.0)) throw std::invalid_argument("half width must be > 0");
}

double SpecialFunctions::f(double z, double v) const
{
    const double c = std::sqrt(h2_ + z * z * R_ * R_);
    return c * std::atan(v * R_ / c);
}

double SpecialFunctions::g(double z, double v) const
{
    const double c = std::sqrt(a_ + h2_ + z * z * R_ * R_);
    return c * std::atan(v * R_ / c);
}

double SpecialFunctions::s(double z, double v) const
{
    return z * R_ * std::log1p(a_ / (h2_ + (z * z + v * v) * R_ * R_));
}

double conditional_throughput_2d(const Point& anchor, const SystemParams& params, double half_width,
                                 double rel_tol)
{
    const double a = params.link_budget();
    const double h2 = params.altitude() * params.altitude();
    const double R = half_width;
    auto integrand = [&](double x, double y) {
        const double dx = x - anchor.x, dy = y - anchor.y;
        return std::log2(1.0 + a / (dx * dx + dy * dy + h2));
    };
    const auto res = numerics::quad_2d(integrand, {0.0, R, 0.0, R}, rel_tol);
    return res.value / (R * R);
}

double avg_throughput_2d(double beta, double mu, const SystemParams& params, double half_width,
                         double rel_tol)
{
    require_beta(beta);
    const DisplacementProbs p = displacement_probs_2d(mu);
    const auto u = anchors(beta, half_width);
    const double e0 = conditional_throughput_2d(u[0], params, half_width, rel_tol);
    if (beta == 0.0) return 4.0 * (p.q[0] + p.q[1] + p.q[2] + p.q[3] + p.q[4]) * e0;
    const double e1 = conditional_throughput_2d(u[1], params, half_width, rel_tol);
    const double e2 = conditional_throughput_2d(u[2], params, half_width, rel_tol);
    const double e3 = conditional_throughput_2d(u[3], params, half_width, rel_tol);
    // U_4 is the mirror image of U_2 across the sector diagonal.
    const double e4 = e2;
    return 4.0 * (p.q[0] * e0 + p.q[1] * e1 + p.q[2] * e2 + p.q[3] * e3 + p.q[4] * e4);
}

double throughput_stationarity_2d(double b, double q1, double q2, const SpecialFunctions& fn)
{
    const double c = 1.0 - b, d = 1.0 + b;
    const double shared = 2.0 * fn.f(c, b) - 2.0 * fn.f(b, b) - 2.0 * fn.f(b, c) +
                          2.0 * fn.g(b, b) + 2.0 * fn.g(b, c) - 2.0 * fn.g(c, b) + fn.s(b, b) +
                          fn.s(c, b) - fn.s(b, c);
    const double own = 2.0 * fn.f(c, c) - 2.0 * fn.g(c, c) - fn.s(c, c);
    const double far = 2.0 * fn.f(c, d) - 2.0 * fn.f(d, c) - 2.0 * fn.f(d, d) + 2.0 * fn.g(d, c) +
                       2.0 * fn.g(d, d) - 2.0 * fn.g(c, d) + fn.s(d, d) + fn.s(c, d) - fn.s(d, c);
    return (q1 - q2) * shared + q1 * own + q2 * far;
}

double optimal_beta_throughput_2d(double mu, const SystemParams& params, double half_width,
                                  double tol)
{
    const DisplacementProbs p = displacement_probs_2d(mu);
    const SpecialFunctions fn(params, half_width);
    auto foc = [&](double b) { return throughput_stationarity_2d(b, p.q[1], p.q[2], fn); };
    if (foc(0.5) >= 0.0) return 0.5;
    return numerics::bisect(foc, numerics::Bracket::make(foc, 0.0, 0.5), tol).root;
}

double sector_coverage_fraction(const Point& anchor, double rho, double half_width)
{
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    const double R = half_width;
    return geometry::disk_rectangle_area(anchor, rho, 0.0, R, 0.0, R) / (R * R);
}

double sector_coverage_fraction(const Placement& anchor, double rho, double half_width)
{
    return sector_coverage_fraction(anchor.ground, rho, half_width);
}

double success_prob_2d(double beta, double rho, double half_width, const DisplacementProbs& probs)
{
    require_beta(beta);
    if (probs.sectors() != 4) throw std::invalid_argument("2D success needs M = 4 probabilities");
    const auto u = anchors(beta, half_width);
    double p = 0.0;
    for (int j = 0; j <= 4; ++j) p += probs.q[j] * sector_coverage_fraction(u[j], rho, half_width);
    return 4.0 * p;
}

double success_prob_2d(double beta, double rho, double mu, double half_width, double tol)
{
    return success_prob_2d(beta, rho, half_width, displacement_probs_2d(mu, 4, tol));
}

namespace {

struct RegimeSolver {
    double r;
    double q1;
    double q2;
    double rho;
    double R;
    const DisplacementProbs& probs;
    double tol;

    double condition(SuccessRegime2D regime, double b) const
    {
        const double r2 = r * r;
        switch (regime) {
        case SuccessRegime2D::Beta1:
            return (q1 - q2) * clamped_sqrt(r2 - b * b) - q1 * clamped_sqrt(r2 - (1 - b) * (1 - b));
        case SuccessRegime2D::Beta2:
            return (q1 - q2) * (b + clamped_sqrt(r2 - b * b)) -
                   2.0 * q1 * clamped_sqrt(r2 - (1 - b) * (1 - b));
        case SuccessRegime2D::Beta4:
            return (1 - b) * (q1 - q2) + 2.0 * q2 * clamped_sqrt(r2 - (1 + b) * (1 + b)) -
                   (q1 + q2) * clamped_sqrt(r2 - (1 - b) * (1 - b));
        default:
            throw std::logic_error("no root condition for this regime");
        }
    }

    double p(double b) const { return success_prob_2d(b, rho, R, probs); }

    double solve(SuccessRegime2D regime) const
    {
        if (regime == SuccessRegime2D::Beta3) {
            return std::clamp(1.0 - r * (q1 + q2) / std::sqrt(2.0 * (q1 * q1 + q2 * q2)), 0.0, 1.0);
        }
        // The root conditions may vanish on whole sub-intervals (clamped radicands),
        // so every sign change on a fine grid is refined and the best kept.
        constexpr int kGrid = 2000;
        auto fn = [&](double b) { return condition(regime, b); };
        double best_b = -1.0, best_p = -1.0;
        double prev_b = 0.0, prev_v = fn(0.0);
        for (int i = 1; i <= kGrid; ++i) {
            const double b = static_cast<double>(i) / kGrid;
            const double v = fn(b);
            if ((prev_v <= 0.0 && v >= 0.0) || (prev_v >= 0.0 && v <= 0.0)) {
                const double root = numerics::bisect(fn, {prev_b, b, prev_v, v}, tol).root;
                const double pr = p(root);
                if (pr > best_p) best_b = root, best_p = pr;
            }
            prev_b = b;
            prev_v = v;
        }
        if (best_b < 0.0) throw numerics::NoSignChange("success root condition has no sign change");
        return best_b;
    }
};

}  // namespace

SuccessOptimum2D optimal_beta_success_2d(double rho, double mu, double half_width, double tol)
{
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    const double R = half_width;
    const double r = rho / R;
    if (r < 0.5) return {BetaSet::interval(r, 1.0 - r), SuccessRegime2D::Interval};
    if (r >= std::numbers::sqrt2) return {BetaSet::point(0.0), SuccessRegime2D::Centre};

    const DisplacementProbs probs = displacement_probs_2d(mu);
    const double q1 = probs.q[1], q2 = probs.q[2];
    const double sq = std::sqrt(q1 * q1 + q2 * q2);
    const std::array<double, 3> bounds{
        std::numbers::sqrt2 * q1 / (std::sqrt(q1 * q1 + 2.0 * q1 * q2 - q2 * q2) + q1),
        sq / (std::numbers::sqrt2 * q1),
        2.0 / (1.0 + (q1 + q2) / (std::numbers::sqrt2 * sq)),
    };
    constexpr std::array<SuccessRegime2D, 4> regimes{SuccessRegime2D::Beta1, SuccessRegime2D::Beta2,
                                                     SuccessRegime2D::Beta3, SuccessRegime2D::Beta4};

    const RegimeSolver solver{r, q1, q2, rho, R, probs, tol};
    std::size_t idx = 0;
    while (idx < bounds.size() && r >= bounds[idx]) ++idx;

    // Near a breakpoint both neighbouring cases are candidates.
    std::vector<std::size_t> cases{idx};
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        if (std::abs(r - bounds[k]) <= 1e-12) {
            for (std::size_t c : {k, k + 1}) {
                if (std::find(cases.begin(), cases.end(), c) == cases.end()) cases.push_back(c);
            }
        }
    }
    SuccessOptimum2D best{BetaSet::point(0.0), regimes[idx]};
    double best_p = -1.0;
    for (std::size_t c : cases) {
        const double b = solver.solve(regimes[c]);
        const double pb = solver.p(b);
        if (pb > best_p) {
            best_p = pb;
            best = {BetaSet::point(b), regimes[c]};
        }
    }
    return best;
}

BetaSet asymptotic_beta_success_2d(double rho, LoadRegime regime, double half_width)
{
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    const double r = rho / half_width;
    if (r < 0.5) return BetaSet::interval(r, 1.0 - r);
    if (regime == LoadRegime::LowLoad) {
        if (r < std::numbers::sqrt2 / 2.0) return BetaSet::point(0.5);
        if (r < std::numbers::sqrt2) return BetaSet::point(1.0 - r / std::numbers::sqrt2);
        return BetaSet::point(0.0);
    }
    if (r < 1.0) return BetaSet::point(1.0 - r);
    return BetaSet::point(0.0);
}

}  // namespace uavdeploy
