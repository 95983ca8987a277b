#ifndef UAVDEPLOY_PPP_SAMPLER_HPP
#define UAVDEPLOY_PPP_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "uavdeploy/core_model.hpp"
#include "uavdeploy/parallel.hpp"

namespace uavdeploy {

/**
 * One draw of the users in a cell.
 *
 * Sectors are 0-based here: 1D sector 0 is [-R, 0) and sector 1 is [0, R];
 * 2D sectors 0..3 are the quadrants (+,+), (-,+), (-,-), (+,-) with x >= 0
 * counted as right and y >= 0 as up.
 */
struct Realization {
    std::vector<Point> users;
    std::vector<int> sector_counts;
    std::optional<std::size_t> typical;

    std::size_t size() const { return users.size(); }
};

int sector_of(const Point& p, Dimension dim);

Realization sample(const CellGeometry& cell, Rng& rng);

// Majority vote. 1D: U_0 on a tie, else toward the larger half.
// 2D: U_j iff sector j is the strict unique maximum, U_0 otherwise.
Placement majority_placement(std::span<const int> sector_counts, double beta,
                             const CellGeometry& cell);
Placement majority_placement(const Realization& realization, double beta,
                             const CellGeometry& cell);

/// Empirical q_j = P(U = U_j, typical user in S_1 | k >= 1), j = 0..M.
struct DisplacementEstimate {
    std::vector<double> q;
    std::vector<double> std_error;
    std::uint64_t n_kept = 0;
    std::uint64_t n_total = 0;

    double discard_rate() const
    {
        return n_total ? 1.0 - static_cast<double>(n_kept) / static_cast<double>(n_total) : 0.0;
    }
};

DisplacementEstimate empirical_displacement_probs(const CellGeometry& cell, double beta,
                                                  std::uint64_t n_realizations,
                                                  std::uint64_t seed, unsigned threads = 0);

// Debug dump: a metadata comment line, then realization_id,x,y,is_typical rows.
void write_realizations_csv(std::ostream& out, std::span<const Realization> realizations,
                            std::uint64_t seed);

}  // namespace uavdeploy

#endif
