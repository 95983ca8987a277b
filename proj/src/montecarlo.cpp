#include "uavdeploy/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "uavdeploy/analytic_1d.hpp"
#include "uavdeploy/geometry.hpp"
#include "uavdeploy/numerics.hpp"
#include "uavdeploy/parallel.hpp"

namespace uavdeploy {

Objective Objective::success_prob(double gamma_th_linear)
{
    if (!(gamma_th_linear > 0.0)) throw std::invalid_argument("gamma_th must be > 0");
    return {ObjectiveKind::SuccessProb, gamma_th_linear};
}

Scheme Scheme::non_adaptive(Objective obj) { return {SchemeKind::NonAdaptive, 0.0, obj, 201}; }
Scheme Scheme::majority_vote(double beta, Objective obj)
{
    return {SchemeKind::MajorityVote, beta, obj, 201};
}
Scheme Scheme::exact_number(Objective obj) { return {SchemeKind::ExactNumber, 0.0, obj, 201}; }
Scheme Scheme::perfect_knowledge(Objective obj, int grid_points)
{
    return {SchemeKind::PerfectKnowledge, 0.0, obj, grid_points};
}

void Scheme::validate(const CellGeometry& cell, const SystemParams& params) const
{
    if (kind == SchemeKind::MajorityVote && !(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("majority vote requires beta in [0, 1]");
    }
    if (kind == SchemeKind::ExactNumber && cell.dimension() == Dimension::TwoD) {
        throw std::invalid_argument("exact-number scheme is only defined in 1D");
    }
    if (kind == SchemeKind::PerfectKnowledge) {
        if (grid_points < 2) throw std::invalid_argument("perfect knowledge needs >= 2 grid points");
        if (objective.kind == ObjectiveKind::SuccessProb &&
            is_zero_coverage(coverage_radius(params, objective.gamma_th))) {
            throw std::invalid_argument("perfect knowledge success objective needs a finite coverage radius");
        }
    }
}

std::string to_string(SchemeKind kind)
{
    switch (kind) {
    case SchemeKind::NonAdaptive: return "non_adaptive";
    case SchemeKind::MajorityVote: return "majority_vote";
    case SchemeKind::ExactNumber: return "exact_number";
    case SchemeKind::PerfectKnowledge: return "perfect_knowledge";
    }
    return "unknown";
}

SchemeKind scheme_kind_from_string(const std::string& name)
{
    for (SchemeKind k : {SchemeKind::NonAdaptive, SchemeKind::MajorityVote, SchemeKind::ExactNumber,
                         SchemeKind::PerfectKnowledge}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

namespace {

double dist2(const Point& a, const Point& b)
{
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Typical-user metric. Coverage uses the disk test with a tiny relative slack so
// that optimal placements on a disk boundary count as covered.
struct MetricEval {
    const SystemParams& params;
    Objective objective;
    std::optional<double> rho;

    MetricEval(const SystemParams& p, const Objective& obj) : params(p), objective(obj)
    {
        if (obj.kind == ObjectiveKind::SuccessProb) rho = radius_meters(coverage_radius(p, obj.gamma_th));
    }

    double operator()(const Point& user, const Point& uav) const
    {
        const double d2 = dist2(user, uav);
        if (objective.kind == ObjectiveKind::AvgThroughput) return throughput(snr(params, std::sqrt(d2)));
        if (!rho) return 0.0;
        const double r2 = *rho * *rho;
        return d2 <= r2 + 1e-9 * std::max(1.0, r2) ? 1.0 : 0.0;
    }
};

double total_throughput(const std::vector<Point>& users, const Point& uav, const SystemParams& params)
{
    const double a = params.link_budget();
    const double h2 = params.altitude() * params.altitude();
    double sum = 0.0;
    for (const Point& u : users) sum += std::log2(1.0 + a / (dist2(u, uav) + h2));
    return sum;
}

Point pk_throughput_1d(const std::vector<Point>& users, const SystemParams& params, double R,
                       int grid_points)
{
    auto f = [&](double x) { return total_throughput(users, {x, 0.0}, params); };
    const double step = 2.0 * R / (grid_points - 1);
    double best_x = -R, best_f = f(-R);
    for (int i = 1; i < grid_points; ++i) {
        const double x = -R + i * step;
        const double fx = f(x);
        if (fx > best_f) best_x = x, best_f = fx;
    }
    const double lo = std::max(-R, best_x - step), hi = std::min(R, best_x + step);
    const auto res = numerics::golden_max(f, lo, hi, 1e-9 * R, 0.0);
    return {res.value >= best_f ? res.argmax : best_x, 0.0};
}

Point pk_throughput_2d(const std::vector<Point>& users, const SystemParams& params, double R,
                       int grid_points)
{
    auto f = [&](const Point& p) { return total_throughput(users, p, params); };
    const double step = 2.0 * R / (grid_points - 1);
    Point best{-R, -R};
    double best_f = f(best);
    for (int i = 0; i < grid_points; ++i) {
        for (int j = 0; j < grid_points; ++j) {
            const Point p{-R + i * step, -R + j * step};
            const double fp = f(p);
            if (fp > best_f) best = p, best_f = fp;
        }
    }
    // Compass search from the best grid node, halving the step when no neighbour improves.
    for (double s = step; s > 1e-9 * R;) {
        bool moved = false;
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                const Point p{std::clamp(best.x + dx * s, -R, R), std::clamp(best.y + dy * s, -R, R)};
                const double fp = f(p);
                if (fp > best_f) best = p, best_f = fp, moved = true;
            }
        }
        if (!moved) s *= 0.5;
    }
    return best;
}

struct BlockMoments {
    Moments m;
    std::uint64_t n_total = 0;
    void merge(const BlockMoments& o)
    {
        m.merge(o.m);
        n_total += o.n_total;
    }
};

MetricsEstimate to_estimate(const BlockMoments& acc, std::uint64_t seed)
{
    return {acc.m.mean(), acc.m.std_error(), acc.m.n, acc.n_total, seed};
}

// Exact-number placement in 1D: beta chosen from the sector counts, direction by majority.
class ExactNumberPolicy {
public:
    ExactNumberPolicy(const CellGeometry& cell, const SystemParams& params, const Objective& obj)
        : cell_(cell), params_(params), objective_(obj)
    {
        if (obj.kind == ObjectiveKind::SuccessProb) {
            const auto rho = radius_meters(coverage_radius(params, obj.gamma_th));
            const double R = cell.half_width();
            // Any beta works when coverage is empty or spans the cell.
            if (rho && *rho > 0.0 && *rho < R) success_beta_ = optimal_beta_success_1d(*rho, R).mid();
        }
    }

    Placement place(const Realization& r)
    {
        const int k1 = r.sector_counts[0], k2 = r.sector_counts[1];
        double beta = 0.0;
        if (k1 != k2) {
            if (objective_.kind == ObjectiveKind::SuccessProb) {
                beta = success_beta_;
            } else {
                const auto key = std::minmax(k1, k2);
                auto it = cache_.find(key);
                if (it == cache_.end()) {
                    it = cache_.emplace(key, exact_number_beta_1d(key.second, key.first, params_,
                                                                  cell_.half_width())).first;
                }
                beta = it->second;
            }
        }
        return majority_placement(r, beta, cell_);
    }

private:
    const CellGeometry& cell_;
    const SystemParams& params_;
    Objective objective_;
    double success_beta_ = 0.0;
    std::map<std::pair<int, int>, double> cache_;
};

}  // namespace

Placement perfect_knowledge_placement(const Realization& realization, const SystemParams& params,
                                      const Objective& objective, const CellGeometry& cell,
                                      int grid_points)
{
    if (realization.users.empty()) throw std::invalid_argument("perfect knowledge needs k >= 1");
    const double R = cell.half_width();
    const bool one_d = cell.dimension() == Dimension::OneD;
    Point pos;
    if (objective.kind == ObjectiveKind::AvgThroughput) {
        pos = one_d ? pk_throughput_1d(realization.users, params, R, grid_points)
                    : pk_throughput_2d(realization.users, params, R, grid_points);
    } else {
        const auto rho = radius_meters(coverage_radius(params, objective.gamma_th));
        if (!rho) throw std::invalid_argument("perfect knowledge success objective needs a finite coverage radius");
        if (one_d) {
            std::vector<double> xs;
            xs.reserve(realization.users.size());
            for (const Point& u : realization.users) xs.push_back(u.x);
            pos = {geometry::max_interval_stabbing(xs, *rho).position, 0.0};
        } else {
            pos = geometry::max_disk_cover(realization.users, *rho).position;
        }
        // Projection onto the cell keeps every user at least as close.
        pos = {std::clamp(pos.x, -R, R), std::clamp(pos.y, -R, R)};
    }
    const double beta = std::max(std::abs(pos.x), std::abs(pos.y)) / R;
    return {-1, pos, beta};
}

MetricsEstimate run_scheme(const CellGeometry& cell, const SystemParams& params, const Scheme& scheme,
                           std::uint64_t n_realizations, std::uint64_t seed, unsigned threads)
{
    if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
    scheme.validate(cell, params);
    const MetricEval metric(params, scheme.objective);

    auto acc = run_blocks<BlockMoments>(n_realizations, seed, threads, [&](Rng& rng, std::uint64_t count) {
        BlockMoments block;
        block.n_total = count;
        std::optional<ExactNumberPolicy> exact;
        if (scheme.kind == SchemeKind::ExactNumber) exact.emplace(cell, params, scheme.objective);
        for (std::uint64_t i = 0; i < count; ++i) {
            const Realization r = sample(cell, rng);
            if (!r.typical) continue;
            Placement p;
            switch (scheme.kind) {
            case SchemeKind::NonAdaptive: p = majority_placement(r, 0.0, cell); break;
            case SchemeKind::MajorityVote: p = majority_placement(r, scheme.beta, cell); break;
            case SchemeKind::ExactNumber: p = exact->place(r); break;
            case SchemeKind::PerfectKnowledge:
                p = perfect_knowledge_placement(r, params, scheme.objective, cell, scheme.grid_points);
                break;
            }
            block.m.add(metric(r.users[*r.typical], p.ground));
        }
        return block;
    });
    return to_estimate(acc, seed);
}

MetricsEstimate multi_uav_1d(const CellGeometry& cell, const SystemParams& params, double beta,
                             int n_side_cells, std::uint64_t n_realizations, std::uint64_t seed,
                             unsigned threads, const Objective& objective)
{
    if (cell.dimension() != Dimension::OneD) throw std::invalid_argument("multi-UAV model is 1D");
    if (n_side_cells < 0) throw std::invalid_argument("n must be >= 0");
    if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");

    const double a = params.link_budget();
    const double h2 = params.altitude() * params.altitude();
    const double R = cell.half_width();
    const bool success = objective.kind == ObjectiveKind::SuccessProb;

    auto acc = run_blocks<BlockMoments>(n_realizations, seed, threads, [&](Rng& rng, std::uint64_t count) {
        BlockMoments block;
        block.n_total = count;
        for (std::uint64_t i = 0; i < count; ++i) {
            // The centre cell is drawn first so that n = 0 replays run_scheme exactly.
            const Realization centre = sample(cell, rng);
            double interference = 0.0;
            const double user_x = centre.typical ? centre.users[*centre.typical].x : 0.0;
            for (int c = -n_side_cells; c <= n_side_cells; ++c) {
                if (c == 0) continue;
                const Realization other = sample(cell, rng);
                const double uav_x = 2.0 * c * R + majority_placement(other, beta, cell).ground.x;
                const double d = user_x - uav_x;
                interference += a / (d * d + h2);
            }
            if (!centre.typical) continue;
            const double d0 = user_x - majority_placement(centre, beta, cell).ground.x;
            const double sinr = (a / (d0 * d0 + h2)) / (1.0 + interference);
            if (success) block.m.add(sinr >= objective.gamma_th ? 1.0 : 0.0);
            else block.m.add(throughput(sinr));
        }
        return block;
    });
    return to_estimate(acc, seed);
}

std::vector<SweepPoint> sweep_beta(const CellGeometry& cell, const SystemParams& params,
                                   const Objective& objective, const std::vector<double>& betas,
                                   std::uint64_t n_realizations, std::uint64_t seed, unsigned threads)
{
    std::vector<SweepPoint> out;
    out.reserve(betas.size());
    for (double b : betas) {
        out.push_back({b, run_scheme(cell, params, Scheme::majority_vote(b, objective), n_realizations,
                                     seed, threads)});
    }
    return out;
}

}  // namespace uavdeploy
