#ifndef UAVDEPLOY_ANALYTIC_2D_HPP
#define UAVDEPLOY_ANALYTIC_2D_HPP

#include "uavdeploy/analytic_1d.hpp"
#include "uavdeploy/core_model.hpp"
#include "uavdeploy/numerics.hpp"

namespace uavdeploy {

// q_0..q_M for the M-sector majority vote. Sectors 2..M share one value by symmetry.
DisplacementProbs displacement_probs_2d(double mu, int sectors = 4,
                                        double tol = numerics::kDefaultPoissonTail);

/**
 * Helper functions of the 2D throughput stationarity condition, with z and v
 * expressed in units of R:
 *   f(z, v) = sqrt(h^2 + z^2 R^2) atan(v R / sqrt(h^2 + z^2 R^2))
 *   g(z, v) = sqrt(a + h^2 + z^2 R^2) atan(v R / sqrt(a + h^2 + z^2 R^2))
 *   s(z, v) = z R ln(1 + a / (h^2 + z^2 R^2 + v^2 R^2))
 */
class SpecialFunctions {
public:
    SpecialFunctions(const SystemParams& params, double half_width);

    double f(double z, double v) const;
    double g(double z, double v) const;
    double s(double z, double v) const;

private:
    double a_;
    double h2_;
    double R_;
};

// E[C | U = anchor, W_0 uniform on S_1 = [0, R]^2], bits/s/Hz, by 2D adaptive quadrature.
double conditional_throughput_2d(const Point& anchor, const SystemParams& params, double half_width,
                                 double rel_tol = numerics::kDefaultQuadTol);

double avg_throughput_2d(double beta, double mu, const SystemParams& params, double half_width,
                         double rel_tol = numerics::kDefaultQuadTol);

// Left-hand side of the throughput first-order condition; positive left of the optimum.
double throughput_stationarity_2d(double beta, double q1, double q2, const SpecialFunctions& fn);

double optimal_beta_throughput_2d(double mu, const SystemParams& params, double half_width,
                                  double tol = numerics::kDefaultRootTol);

// eta = |disk(anchor, rho) ∩ [0, R]^2| / R^2
double sector_coverage_fraction(const Point& anchor, double rho, double half_width);
double sector_coverage_fraction(const Placement& anchor, double rho, double half_width);

double success_prob_2d(double beta, double rho, double mu, double half_width,
                       double tol = numerics::kDefaultPoissonTail);
double success_prob_2d(double beta, double rho, double half_width, const DisplacementProbs& probs);

// Interval for rho < R/2, Beta1..Beta4 for the four root conditions, Centre for rho >= sqrt(2) R.
enum class SuccessRegime2D { Interval, Beta1, Beta2, Beta3, Beta4, Centre };

struct SuccessOptimum2D {
    BetaSet beta;
    SuccessRegime2D regime;
};

SuccessOptimum2D optimal_beta_success_2d(double rho, double mu, double half_width,
                                         double tol = numerics::kDefaultRootTol);

enum class LoadRegime { LowLoad, HighLoad };

BetaSet asymptotic_beta_success_2d(double rho, LoadRegime regime, double half_width);

}  // namespace uavdeploy

#endif
