#include "uavdeploy/analytic_1d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace uavdeploy {

double DisplacementProbs::sum() const { return std::accumulate(q.begin(), q.end(), 0.0); }

double BetaSet::distance(double b) const
{
    if (b < lo) return lo - b;
    if (b > hi) return b - hi;
    return 0.0;
}

namespace {

// C(n, n/2) / 2^(n+1) for even n, in log space.
double central_binomial_half(long n)
{
    const double nd = static_cast<double>(n);
    return std::exp(std::lgamma(nd + 1.0) - 2.0 * std::lgamma(nd / 2.0 + 1.0) -
                    (nd + 1.0) * std::numbers::ln2);
}

DisplacementProbs compute_probs_1d(double mu, double tol)
{
    const double p_nonempty = -std::expm1(-mu);
    const long k_max = std::min<long>(numerics::poisson_quantile_upper(mu, tol * p_nonempty),
                                      static_cast<long>(mu + 60.0 * std::sqrt(mu) + 200.0));
    const double log_norm = std::log(p_nonempty);

    double s1 = 0.0, s2 = 0.0;
    for (long k = 1; k <= k_max; ++k) {
        const double w = std::exp(numerics::poisson_pmf_log(k, mu) - log_norm);
        // P(U = U_1 | X_0 in S_1, k) and P(U = U_2 | X_0 in S_1, k)
        double a1, a2;
        if (k % 2 == 1) {
            const double c = central_binomial_half(k - 1);  // C(k-1, (k-1)/2) / 2^k
            a1 = 0.5 + c;
            a2 = 0.5 - c;
        } else {
            a1 = 0.5;
            a2 = 0.5 - central_binomial_half(k) * 2.0;  // C(k, k/2) / 2^k
        }
        s1 += w * a1;
        s2 += w * a2;
    }
    DisplacementProbs p;
    p.mu = mu;
    const double q1 = 0.5 * s1, q2 = 0.5 * s2;
    p.q = {0.5 - q1 - q2, q1, q2};
    p.truncation_error_bound = 0.5 * numerics::poisson_upper_tail(k_max, mu) / p_nonempty;
    return p;
}

std::mutex probs_mutex;
std::map<std::pair<double, double>, DisplacementProbs> probs_cache;

// Antiderivative of ln(1 + a / (y^2 + h^2)) in y.
double log_gain_antiderivative(double y, double a, double h)
{
    const double c = std::sqrt(a + h * h);
    return y * std::log1p(a / (y * y + h * h)) + 2.0 * c * std::atan(y / c) -
           2.0 * h * std::atan(y / h);
}

double log_gain(double z, const SystemParams& params, double half_width)
{
    const double h = params.altitude();
    const double d = z * half_width;
    return std::log1p(params.link_budget() / (h * h + d * d));
}

void require_beta(double beta)
{
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
}

}  // namespace

DisplacementProbs displacement_probs_1d(double mu, double tol)
{
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be finite and > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("truncation tolerance must be > 0");
    const auto key = std::make_pair(mu, tol);
    {
        std::lock_guard lock(probs_mutex);
        if (auto it = probs_cache.find(key); it != probs_cache.end()) return it->second;
    }
    DisplacementProbs p = compute_probs_1d(mu, tol);
    std::lock_guard lock(probs_mutex);
    probs_cache.emplace(key, p);
    return p;
}

ThroughputTerms throughput_terms(double beta, const SystemParams& params, double half_width)
{
    require_beta(beta);
    const double a = params.link_budget();
    const double h = params.altitude();
    const double R = half_width;
    const double scale = 1.0 / (R * std::numbers::ln2);
    ThroughputTerms t;
    t.beta = beta;
    t.zeta = -log_gain_antiderivative((beta - 1.0) * R, a, h) * scale;
    t.kappa_term = log_gain_antiderivative(beta * R, a, h) * scale;
    t.xi = log_gain_antiderivative((beta + 1.0) * R, a, h) * scale;
    t.vartheta = log_gain_antiderivative(R, a, h) * scale;
    return t;
}

double avg_throughput_1d(double beta, double mu, const SystemParams& params, double half_width,
                         double tol)
{
    const DisplacementProbs p = displacement_probs_1d(mu, tol);
    const ThroughputTerms t = throughput_terms(beta, params, half_width);
    const double q0 = p.q[0], q1 = p.q[1], q2 = p.q[2];
    return 2.0 * (q1 * t.zeta + (q1 - q2) * t.kappa_term + q2 * t.xi + q0 * t.vartheta);
}

double throughput_stationarity_1d(double beta, double q1, double q2, const SystemParams& params,
                                  double half_width)
{
    const double l0 = log_gain(beta, params, half_width);
    const double rho1 = l0 - log_gain(beta - 1.0, params, half_width);
    const double rho2 = l0 - log_gain(beta + 1.0, params, half_width);
    return q1 * rho1 - q2 * rho2;
}

double optimal_beta_throughput_1d(double mu, const SystemParams& params, double half_width,
                                  double tol)
{
    const DisplacementProbs p = displacement_probs_1d(mu);
    const double q1 = p.q[1], q2 = p.q[2];
    auto foc = [&](double b) { return throughput_stationarity_1d(b, q1, q2, params, half_width); };
    // The root lies in [0, 1/2]: foc(0) = (q1 - q2) rho(0) > 0 and foc(1/2) = -q2 rho2 <= 0.
    if (foc(0.5) >= 0.0) return 0.5;
    return numerics::bisect(foc, numerics::Bracket::make(foc, 0.0, 0.5), tol).root;
}

double success_prob_1d(double beta, double rho, double half_width, double q0, double q1, double q2)
{
    require_beta(beta);
    if (!(rho > 0.0 && rho < half_width)) {
        throw std::domain_error("success_prob_1d requires 0 < rho < R");
    }
    const double r = rho / half_width;
    if (r <= 0.5) {
        if (beta <= r) return r + 2.0 * beta * (q1 - q2);
        if (beta <= 1.0 - r) return 4.0 * r * q1 + 2.0 * r * q0;
        return 2.0 * ((1.0 - beta + r) * q1 + r * q0);
    }
    if (beta <= 1.0 - r) return r + 2.0 * beta * (q1 - q2);
    if (beta <= r) return r + 2.0 * ((1.0 - r) * q1 - beta * q2);
    return 2.0 * ((1.0 - beta + r) * q1 + r * q0);
}

double success_prob_1d(double beta, double rho, double mu, double half_width, double tol)
{
    const DisplacementProbs p = displacement_probs_1d(mu, tol);
    return success_prob_1d(beta, rho, half_width, p.q[0], p.q[1], p.q[2]);
}

BetaSet optimal_beta_success_1d(double rho, double half_width)
{
    if (!(rho > 0.0 && rho < half_width)) {
        throw std::domain_error("optimal_beta_success_1d requires 0 < rho < R");
    }
    const double r = rho / half_width;
    if (r <= 0.5) return BetaSet::interval(r, 1.0 - r);
    return BetaSet::point(1.0 - r);
}

double exact_number_throughput_1d(double beta, int k1, int k2, const SystemParams& params,
                                  double half_width)
{
    if (k1 < 0 || k2 < 0 || k1 + k2 < 1) throw std::invalid_argument("need K1 + K2 >= 1");
    const ThroughputTerms t = throughput_terms(beta, params, half_width);
    if (k1 == k2) return t.vartheta;
    const double k = static_cast<double>(k1 + k2);
    const double major = static_cast<double>(std::max(k1, k2));
    const double minor = static_cast<double>(std::min(k1, k2));
    return (major * (t.zeta + t.kappa_term) + minor * (t.xi - t.kappa_term)) / k;
}

double exact_number_beta_1d(int k1, int k2, const SystemParams& params, double half_width,
                            double tol)
{
    if (k1 < 0 || k2 < 0 || k1 + k2 < 1) throw std::invalid_argument("need K1 + K2 >= 1");
    if (k1 == k2) return 0.0;
    const double major = static_cast<double>(std::max(k1, k2));
    const double minor = static_cast<double>(std::min(k1, k2));
    auto foc = [&](double b) {
        return throughput_stationarity_1d(b, major, minor, params, half_width);
    };
    if (foc(0.5) >= 0.0) return 0.5;
    return numerics::bisect(foc, numerics::Bracket::make(foc, 0.0, 0.5), tol).root;
}

}  // namespace uavdeploy
