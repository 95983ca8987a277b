#ifndef UAVDEPLOY_NUMERICS_HPP
#define UAVDEPLOY_NUMERICS_HPP

#include <functional>
#include <stdexcept>

namespace uavdeploy::numerics {

inline constexpr double kDefaultRootTol = 1e-9;
inline constexpr double kDefaultQuadTol = 1e-8;
inline constexpr double kDefaultPoissonTail = 1e-12;

using RealFn = std::function<double(double)>;
using RealFn2 = std::function<double(double, double)>;

class NoSignChange : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class MaxIterExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergent : public std::runtime_error {
public:
    NonConvergent(const std::string& what, double value, double error_estimate)
        : std::runtime_error(what), value_(value), error_estimate_(error_estimate) {}
    double value() const { return value_; }
    double error_estimate() const { return error_estimate_; }

private:
    double value_;
    double error_estimate_;
};

/// Root bracket: lo < hi with f(lo), f(hi) of opposite sign (or one of them zero).
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    static Bracket make(const RealFn& f, double lo, double hi);
    bool valid() const;
};

struct RootResult {
    double root;
    int iterations;
    double lo;  // final bracket
    double hi;
};

// |root - true root| <= tol_x; at most ceil(log2((hi - lo) / tol_x)) iterations.
RootResult bisect(const RealFn& f, Bracket bracket, double tol_x = kDefaultRootTol,
                  int max_iter = 200);

inline double bisect_root(const RealFn& f, double lo, double hi, double tol_x = kDefaultRootTol)
{
    return bisect(f, Bracket::make(f, lo, hi), tol_x).root;
}

struct MaxResult {
    double argmax;
    double value;
    // Set of points within the flatness tolerance of the maximum. Equal to
    // [argmax, argmax] up to tol_x unless the function has a plateau there.
    double plateau_lo;
    double plateau_hi;
    bool plateau;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
MaxResult golden_max(const RealFn& f, double lo, double hi, double tol_x = 1e-9,
                     double flat_tol = 1e-12);

struct QuadResult {
    double value;
    double error;
    int evaluations;
};

// Globally adaptive 7/15-point Gauss-Kronrod. Throws NonConvergent when the
// interval budget is exhausted before the requested accuracy.
QuadResult quad_1d(const RealFn& f, double a, double b, double rel_tol = kDefaultQuadTol,
                   double abs_tol = 0.0, int max_intervals = 4000);

struct Box {
    double x0;
    double x1;
    double y0;
    double y1;
};

// Tensor-product adaptive rule: outer integral over y of inner integrals over x.
QuadResult quad_2d(const RealFn2& f, const Box& box, double rel_tol = kDefaultQuadTol);

double poisson_pmf_log(long k, double mu);
// P(X > k) for X ~ Poisson(mu), evaluated without cancellation in the far tail.
double poisson_upper_tail(long k, double mu);
// Smallest K with P(X > K) < tail_mass.
long poisson_quantile_upper(double mu, double tail_mass);

}  // namespace uavdeploy::numerics

#endif
