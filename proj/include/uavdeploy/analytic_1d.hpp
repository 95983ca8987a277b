#ifndef UAVDEPLOY_ANALYTIC_1D_HPP
#define UAVDEPLOY_ANALYTIC_1D_HPP

#include <vector>

#include "uavdeploy/core_model.hpp"
#include "uavdeploy/numerics.hpp"

namespace uavdeploy {

/**
 * Joint probabilities q_j = P(U = U_j, typical user in S_1 | k >= 1), j = 0..M.
 *
 * They sum to 1/M. `truncation_error_bound` bounds the probability mass lost
 * by cutting the infinite count sums.
 */
struct DisplacementProbs {
    std::vector<double> q;
    double mu = 0.0;
    double truncation_error_bound = 0.0;

    int sectors() const { return static_cast<int>(q.size()) - 1; }
    double sum() const;
};

/// Optimal displacement factors: a closed interval, possibly a single point.
struct BetaSet {
    double lo = 0.0;
    double hi = 0.0;

    static BetaSet point(double b) { return {b, b}; }
    static BetaSet interval(double lo, double hi) { return {lo, hi}; }
    bool is_point() const { return lo == hi; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double b, double tol = 0.0) const { return b >= lo - tol && b <= hi + tol; }
    // Distance from b to the set (0 inside).
    double distance(double b) const;
};

// Throughput integrals over the left sector, in bits/s/Hz:
//   omega_1 = zeta + kappa_term   (UAV at -beta R)
//   omega_2 = xi - kappa_term     (UAV at +beta R)
//   omega_0 = vartheta            (UAV at the centre)
struct ThroughputTerms {
    double zeta;
    double kappa_term;
    double xi;
    double vartheta;
    double beta;
};

DisplacementProbs displacement_probs_1d(double mu, double tol = numerics::kDefaultPoissonTail);

ThroughputTerms throughput_terms(double beta, const SystemParams& params, double half_width);

double avg_throughput_1d(double beta, double mu, const SystemParams& params, double half_width,
                         double tol = numerics::kDefaultPoissonTail);

// First-order condition q1 rho1 - q2 rho2 (natural log); positive left of the optimum.
double throughput_stationarity_1d(double beta, double q1, double q2, const SystemParams& params,
                                  double half_width);

double optimal_beta_throughput_1d(double mu, const SystemParams& params, double half_width,
                                  double tol = numerics::kDefaultRootTol);

// Requires 0 < rho < R. rho >= R (p = 1) and zero coverage (p = 0) are the caller's cases.
double success_prob_1d(double beta, double rho, double mu, double half_width,
                       double tol = numerics::kDefaultPoissonTail);
double success_prob_1d(double beta, double rho, double half_width, double q0, double q1, double q2);

BetaSet optimal_beta_success_1d(double rho, double half_width);

// Conditional expected throughput given sector counts K1, K2 when the UAV
// moves toward the fuller half by beta R (centre when K1 == K2).
double exact_number_throughput_1d(double beta, int k1, int k2, const SystemParams& params,
                                  double half_width);

double exact_number_beta_1d(int k1, int k2, const SystemParams& params, double half_width,
                            double tol = numerics::kDefaultRootTol);

}  // namespace uavdeploy

#endif
