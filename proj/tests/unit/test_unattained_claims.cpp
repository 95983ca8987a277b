// Claims checked as stated that do not hold for the exact model. The heavy-load
// limits are approached as O(1/sqrt(mu)), slower than these tolerances allow;
// the 2D throughput curve turns convex near beta = 1.
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "uavdeploy/analytic_1d.hpp"
#include "uavdeploy/analytic_2d.hpp"
#include "uavdeploy/ppp_sampler.hpp"

using namespace uavdeploy;

TEST_CASE("1D probabilities at mu = 100 are within 0.01 of one quarter")
{
    const auto p = displacement_probs_1d(100.0);
    CHECK(std::abs(p.q[1] - 0.25) < 0.01);
    CHECK(std::abs(p.q[2] - 0.25) < 0.01);
}

TEST_CASE("empirical 1D probabilities at mu = 50 are one quarter within 3 standard errors")
{
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, 1000.0, 50.0);
    const auto e = empirical_displacement_probs(cell, 0.3, 1000000, 50, 0);
    CHECK(std::abs(e.q[1] - 0.25) <= 3.0 * e.std_error[1]);
    CHECK(std::abs(e.q[2] - 0.25) <= 3.0 * e.std_error[2]);
}

TEST_CASE("1D throughput optimum at mu = 1000 is below 0.02")
{
    CHECK(optimal_beta_throughput_1d(1000.0, SystemParams::reference(), 1000.0) < 0.02);
}

TEST_CASE("2D probabilities at mu = 200 are within 0.005 of one sixteenth")
{
    const auto p = displacement_probs_2d(200.0);
    for (int j = 1; j <= 4; ++j) {
        CAPTURE(j);
        CHECK(std::abs(p.q[j] - 1.0 / 16.0) < 0.005);
    }
}

TEST_CASE("2D throughput optimum at mu = 1000 is below 0.02")
{
    CHECK(optimal_beta_throughput_2d(1000.0, SystemParams::reference(), 1000.0) < 0.02);
}

TEST_CASE("2D throughput is concave in beta at mu = 4")
{
    const auto params = SystemParams::reference();
    std::vector<double> v;
    for (int i = 0; i <= 20; ++i) v.push_back(avg_throughput_2d(i / 20.0, 4.0, params, 1000.0));
    for (int i = 1; i < 20; ++i) {
        CAPTURE(i);
        CHECK(v[i - 1] - 2.0 * v[i] + v[i + 1] < 0.0);
    }
}
