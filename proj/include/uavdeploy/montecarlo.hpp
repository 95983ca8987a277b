#ifndef UAVDEPLOY_MONTECARLO_HPP
#define UAVDEPLOY_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "uavdeploy/core_model.hpp"
#include "uavdeploy/ppp_sampler.hpp"

namespace uavdeploy {

enum class SchemeKind { NonAdaptive, MajorityVote, ExactNumber, PerfectKnowledge };
enum class ObjectiveKind { AvgThroughput, SuccessProb };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::AvgThroughput;
    double gamma_th = 0.0;  // linear SNR target, SuccessProb only

    static Objective avg_throughput() { return {}; }
    static Objective success_prob(double gamma_th_linear);
};

/// Deployment scheme of one simulation run.
struct Scheme {
    SchemeKind kind = SchemeKind::NonAdaptive;
    double beta = 0.0;  // MajorityVote only
    Objective objective;
    int grid_points = 201;  // PerfectKnowledge throughput search grid per axis

    static Scheme non_adaptive(Objective obj = {});
    static Scheme majority_vote(double beta, Objective obj = {});
    static Scheme exact_number(Objective obj = {});
    static Scheme perfect_knowledge(Objective obj = {}, int grid_points = 201);

    // Throws std::invalid_argument when the combination is not simulable.
    void validate(const CellGeometry& cell, const SystemParams& params) const;
};

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& name);

struct MetricsEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_kept = 0;
    std::uint64_t n_total = 0;
    std::uint64_t seed = 0;
};

// Typical-user throughput or coverage indicator averaged over realizations with k >= 1.
MetricsEstimate run_scheme(const CellGeometry& cell, const SystemParams& params, const Scheme& scheme,
                           std::uint64_t n_realizations, std::uint64_t seed, unsigned threads = 0);

// Position maximizing the total throughput or the covered-user count of a
// realization. The anchor index is -1: the placement is free, not an anchor.
Placement perfect_knowledge_placement(const Realization& realization, const SystemParams& params,
                                      const Objective& objective, const CellGeometry& cell,
                                      int grid_points = 201);

/**
 * 1D chain of 2n+1 cells of width 2R centred at 2iR, i = -n..n, with full
 * frequency reuse. Each UAV applies the majority vote inside its own cell; the
 * typical user of the centre cell sees the others as interference
 * (SINR = S / (1 + I), powers normalized to noise).
 */
MetricsEstimate multi_uav_1d(const CellGeometry& cell, const SystemParams& params, double beta,
                             int n_side_cells, std::uint64_t n_realizations, std::uint64_t seed,
                             unsigned threads = 0, const Objective& objective = {});

struct SweepPoint {
    double beta;
    MetricsEstimate estimate;
};

// Majority vote at each beta, same seed for every point.
std::vector<SweepPoint> sweep_beta(const CellGeometry& cell, const SystemParams& params,
                                   const Objective& objective, const std::vector<double>& betas,
                                   std::uint64_t n_realizations, std::uint64_t seed,
                                   unsigned threads = 0);

}  // namespace uavdeploy

#endif
