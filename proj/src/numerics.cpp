#include "uavdeploy/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace uavdeploy::numerics {

namespace {

bool opposite_or_zero(double a, double b) { return a == 0.0 || b == 0.0 || (a < 0.0) != (b < 0.0); }

}  // namespace

Bracket Bracket::make(const RealFn& f, double lo, double hi)
{
    return Bracket{lo, hi, f(lo), f(hi)};
}

bool Bracket::valid() const
{
    return lo < hi && std::isfinite(f_lo) && std::isfinite(f_hi) && opposite_or_zero(f_lo, f_hi);
}

RootResult bisect(const RealFn& f, Bracket bracket, double tol_x, int max_iter)
{
    if (!(tol_x > 0.0)) throw std::invalid_argument("bisect: tol_x must be > 0");
    if (!bracket.valid()) {
        throw NoSignChange("bisect: no sign change on [" + std::to_string(bracket.lo) + ", " +
                           std::to_string(bracket.hi) + "]");
    }
    if (bracket.f_lo == 0.0) return {bracket.lo, 0, bracket.lo, bracket.lo};
    if (bracket.f_hi == 0.0) return {bracket.hi, 0, bracket.hi, bracket.hi};

    double lo = bracket.lo, hi = bracket.hi, f_lo = bracket.f_lo;
    int it = 0;
    while (0.5 * (hi - lo) > tol_x) {
        if (it >= max_iter) throw MaxIterExceeded("bisect: iteration limit reached");
        ++it;
        const double mid = lo + 0.5 * (hi - lo);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return {mid, it, mid, mid};
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {lo + 0.5 * (hi - lo), it, lo, hi};
}

MaxResult golden_max(const RealFn& f, double lo, double hi, double tol_x, double flat_tol)
{
    if (!(lo <= hi)) throw std::invalid_argument("golden_max: lo > hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol_x) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double best = 0.5 * (a + b);
    double f_best = f(best);
    for (double x : {lo, hi}) {
        const double fx = f(x);
        if (fx > f_best) {
            best = x;
            f_best = fx;
        }
    }

    // The superlevel set {f >= f_best - flat_tol} of a unimodal function is an interval.
    const double threshold = f_best - flat_tol * std::max(1.0, std::abs(f_best));
    auto edge = [&](double outer) {
        if (f(outer) >= threshold) return outer;
        double in = best, out = outer;
        while (std::abs(out - in) > tol_x) {
            const double mid = 0.5 * (in + out);
            if (f(mid) >= threshold) in = mid;
            else out = mid;
        }
        return in;
    };
    const double p_lo = edge(lo);
    const double p_hi = edge(hi);
    // Peaks of smooth concave functions have a superlevel width of order sqrt(flat_tol);
    // anything wider than 1e-4 of the search range is reported as a plateau.
    const bool plateau = (p_hi - p_lo) > std::max(1e-4 * (hi - lo), 2.0 * tol_x);
    return {best, f_best, p_lo, p_hi, plateau};
}

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const RealFn& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);
    double k = f_center * kWgk[7];
    double g = f_center * kWg[3];
    double k_abs = std::abs(k);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        k += kWgk[j] * (f1 + f2);
        k_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, k * half, std::abs((k - g) * half), k_abs * std::abs(half)};
}

}  // namespace

QuadResult quad_1d(const RealFn& f, double a, double b, double rel_tol, double abs_tol,
                   int max_intervals)
{
    if (a == b) return {0.0, 0.0, 0};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<Segment> queue;
    Segment first = gk15(f, a, b);
    double total = first.value, total_err = first.error, total_abs = first.abs_value;
    int evaluations = 15;
    queue.push(first);

    auto done = [&] {
        const double eps = std::numeric_limits<double>::epsilon();
        return total_err <= std::max(abs_tol, rel_tol * std::abs(total)) ||
               total_err <= 50.0 * eps * total_abs;
    };
    while (!done()) {
        if (static_cast<int>(queue.size()) >= max_intervals) {
            throw NonConvergent("quad_1d: interval budget exhausted", sign * total, total_err);
        }
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum to shed the drift of the incremental updates.
    double value = 0.0, err = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        err += queue.top().error;
        queue.pop();
    }
    return {sign * value, err, evaluations};
}

QuadResult quad_2d(const RealFn2& f, const Box& box, double rel_tol)
{
    const double inner_tol = 0.1 * rel_tol;
    double worst_inner_err = 0.0;
    int evaluations = 0;
    auto outer = [&](double y) {
        QuadResult inner = quad_1d([&](double x) { return f(x, y); }, box.x0, box.x1, inner_tol);
        worst_inner_err = std::max(worst_inner_err, inner.error);
        evaluations += inner.evaluations;
        return inner.value;
    };
    QuadResult r = quad_1d(outer, box.y0, box.y1, rel_tol);
    return {r.value, r.error + std::abs(box.y1 - box.y0) * worst_inner_err, evaluations};
}

double poisson_pmf_log(long k, double mu)
{
    if (!(mu > 0.0)) throw std::invalid_argument("poisson_pmf_log: mu must be > 0");
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (k == 0) return -mu;
    const double kd = static_cast<double>(k);
    return -mu + kd * std::log(mu) - std::lgamma(kd + 1.0);
}

double poisson_upper_tail(long k, double mu)
{
    if (k < 0) return 1.0;
    if (static_cast<double>(k + 1) > mu) {
        // Terms decrease from j = k + 1 on; sum the series directly.
        double term = std::exp(poisson_pmf_log(k + 1, mu));
        double sum = 0.0;
        for (long j = k + 1; term > 0.0; ++j) {
            sum += term;
            if (term < sum * 1e-17) break;
            term *= mu / static_cast<double>(j + 1);
        }
        return sum;
    }
    double cdf = 0.0;
    for (long j = 0; j <= k; ++j) cdf += std::exp(poisson_pmf_log(j, mu));
    return std::max(0.0, 1.0 - cdf);
}

long poisson_quantile_upper(double mu, double tail_mass)
{
    if (!(mu > 0.0)) throw std::invalid_argument("poisson_quantile_upper: mu must be > 0");
    if (!(tail_mass > 0.0)) throw std::invalid_argument("poisson_quantile_upper: tail must be > 0");
    if (poisson_upper_tail(0, mu) < tail_mass) return 0;
    long hi = static_cast<long>(std::ceil(mu)) + 1;
    while (poisson_upper_tail(hi, mu) >= tail_mass) hi *= 2;
    long lo = 0;  // tail(lo) >= tail_mass, tail(hi) < tail_mass
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (poisson_upper_tail(mid, mu) < tail_mass) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace uavdeploy::numerics
