#include "uavdeploy/ppp_sampler.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "uavdeploy/version.hpp"

namespace uavdeploy {

int sector_of(const Point& p, Dimension dim)
{
    if (dim == Dimension::OneD) return p.x < 0.0 ? 0 : 1;
    if (p.y >= 0.0) return p.x >= 0.0 ? 0 : 1;
    return p.x < 0.0 ? 2 : 3;
}

Realization sample(const CellGeometry& cell, Rng& rng)
{
    Realization r;
    r.sector_counts.assign(static_cast<std::size_t>(cell.sectors()), 0);
    const double mu = cell.mean_load();
    if (mu <= 0.0) return r;

    const int k = std::poisson_distribution<int>(mu)(rng);
    const double R = cell.half_width();
    std::uniform_real_distribution<double> coord(-R, R);
    r.users.reserve(static_cast<std::size_t>(k));
    const bool two_d = cell.dimension() == Dimension::TwoD;
    for (int i = 0; i < k; ++i) {
        Point p;
        p.x = coord(rng);
        if (two_d) p.y = coord(rng);
        ++r.sector_counts[static_cast<std::size_t>(sector_of(p, cell.dimension()))];
        r.users.push_back(p);
    }
    if (k > 0) {
        r.typical = std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(k) - 1)(rng);
    }
    return r;
}

Placement majority_placement(std::span<const int> counts, double beta, const CellGeometry& cell)
{
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
    if (counts.size() != static_cast<std::size_t>(cell.sectors())) {
        throw std::invalid_argument("sector count vector does not match cell");
    }
    int anchor = 0;
    if (cell.dimension() == Dimension::OneD) {
        if (counts[0] > counts[1]) anchor = 1;
        else if (counts[0] < counts[1]) anchor = 2;
    } else {
        const auto top = std::max_element(counts.begin(), counts.end());
        if (std::count(counts.begin(), counts.end(), *top) == 1) {
            anchor = static_cast<int>(top - counts.begin()) + 1;
        }
    }
    return {anchor, anchor_point(anchor, beta, cell), beta};
}

Placement majority_placement(const Realization& realization, double beta, const CellGeometry& cell)
{
    return majority_placement(std::span<const int>(realization.sector_counts), beta, cell);
}

namespace {

struct JointCounts {
    std::vector<Moments> per_anchor;
    std::uint64_t n_total = 0;

    void merge(const JointCounts& o)
    {
        if (per_anchor.empty()) per_anchor.resize(o.per_anchor.size());
        for (std::size_t j = 0; j < o.per_anchor.size(); ++j) per_anchor[j].merge(o.per_anchor[j]);
        n_total += o.n_total;
    }
};

}  // namespace

DisplacementEstimate empirical_displacement_probs(const CellGeometry& cell, double beta,
                                                  std::uint64_t n_realizations,
                                                  std::uint64_t seed, unsigned threads)
{
    if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
    const std::size_t n_anchors = static_cast<std::size_t>(cell.sectors()) + 1;
    auto acc = run_blocks<JointCounts>(n_realizations, seed, threads, [&](Rng& rng, std::uint64_t count) {
        JointCounts block;
        block.per_anchor.resize(n_anchors);
        block.n_total = count;
        for (std::uint64_t i = 0; i < count; ++i) {
            Realization r = sample(cell, rng);
            if (!r.typical) continue;
            const int anchor = majority_placement(r, beta, cell).anchor;
            const bool in_first = sector_of(r.users[*r.typical], cell.dimension()) == 0;
            for (std::size_t j = 0; j < n_anchors; ++j) {
                block.per_anchor[j].add(in_first && static_cast<int>(j) == anchor ? 1.0 : 0.0);
            }
        }
        return block;
    });

    DisplacementEstimate est;
    est.n_total = acc.n_total;
    est.n_kept = acc.per_anchor.empty() ? 0 : acc.per_anchor[0].n;
    for (const Moments& m : acc.per_anchor) {
        est.q.push_back(m.mean());
        est.std_error.push_back(m.std_error());
    }
    return est;
}

void write_realizations_csv(std::ostream& out, std::span<const Realization> realizations,
                            std::uint64_t seed)
{
    out << "# " << kToolName << ' ' << kToolVersion << " seed=" << seed
        << " realizations=" << realizations.size() << " dataset=realizations\n";
    out << "realization_id,x,y,is_typical\n";
    for (std::size_t id = 0; id < realizations.size(); ++id) {
        const Realization& r = realizations[id];
        for (std::size_t u = 0; u < r.users.size(); ++u) {
            const bool typical = r.typical && *r.typical == u;
            out << id << ',' << r.users[u].x << ',' << r.users[u].y << ',' << (typical ? 1 : 0) << '\n';
        }
    }
}

}  // namespace uavdeploy
