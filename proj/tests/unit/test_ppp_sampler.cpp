#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "uavdeploy/ppp_sampler.hpp"
#include "uavdeploy/version.hpp"

using namespace uavdeploy;

namespace {

std::vector<int> recount(const std::vector<Point>& users, const CellGeometry& cell)
{
    std::vector<int> c(static_cast<std::size_t>(cell.sectors()), 0);
    for (const Point& p : users) ++c[static_cast<std::size_t>(sector_of(p, cell.dimension()))];
    return c;
}

}  // namespace

TEST_CASE("zero density yields empty realizations")
{
    Rng rng(1);
    const auto cell = CellGeometry::one_d(1000.0, 0.0);
    for (int i = 0; i < 100; ++i) {
        const auto r = sample(cell, rng);
        CHECK(r.size() == 0);
        CHECK_FALSE(r.typical.has_value());
    }
}

TEST_CASE("realization invariants under fuzzing")
{
    for (Dimension dim : {Dimension::OneD, Dimension::TwoD}) {
        const auto cell = CellGeometry::from_mean_load(dim, 750.0, 3.0);
        Rng rng(42);
        bool all_ok = true;
        for (int i = 0; i < 100000; ++i) {
            const auto r = sample(cell, rng);
            int sum = 0;
            for (int c : r.sector_counts) sum += c;
            all_ok &= sum == static_cast<int>(r.size());
            all_ok &= r.typical.has_value() == (r.size() >= 1);
            if (r.typical) all_ok &= *r.typical < r.size();
            for (const Point& p : r.users) {
                all_ok &= std::abs(p.x) <= 750.0;
                all_ok &= std::abs(p.y) <= 750.0;
                if (dim == Dimension::OneD) all_ok &= p.y == 0.0;
            }
            all_ok &= recount(r.users, cell) == r.sector_counts;
        }
        CHECK(all_ok);
    }
}

TEST_CASE("sector boundary convention")
{
    CHECK(sector_of({-1e-12, 0.0}, Dimension::OneD) == 0);
    CHECK(sector_of({0.0, 0.0}, Dimension::OneD) == 1);
    CHECK(sector_of({0.0, 0.0}, Dimension::TwoD) == 0);
    CHECK(sector_of({-1.0, 0.0}, Dimension::TwoD) == 1);
    CHECK(sector_of({-1.0, -1.0}, Dimension::TwoD) == 2);
    CHECK(sector_of({0.0, -1.0}, Dimension::TwoD) == 3);
}

TEST_CASE("mean user count")
{
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, 1000.0, 1.0);
    Rng rng(7);
    double total = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) total += static_cast<double>(sample(cell, rng).size());
    CHECK(std::abs(total / n - 1.0) <= 0.01);
}

TEST_CASE("conditional sector split is Binomial(K, 1/2)")
{
    const int K = 6;
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, 1000.0, 6.0);
    Rng rng(99);
    std::vector<double> observed(K + 1, 0.0);
    int n = 0;
    while (n < 40000) {
        const auto r = sample(cell, rng);
        if (static_cast<int>(r.size()) != K) continue;
        observed[static_cast<std::size_t>(r.sector_counts[0])] += 1.0;
        ++n;
    }
    double chi2 = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double p = std::exp(std::lgamma(K + 1.0) - std::lgamma(k + 1.0) - std::lgamma(K - k + 1.0)) /
                         std::pow(2.0, K);
        const double expected = n * p;
        chi2 += (observed[k] - expected) * (observed[k] - expected) / expected;
    }
    // Upper 1% point of chi-square with 6 degrees of freedom.
    CHECK(chi2 < 16.812);
}

TEST_CASE("majority placement examples")
{
    const auto c1 = CellGeometry::one_d(1000.0, 0.001);
    const std::vector<int> a{3, 1};
    const auto p = majority_placement(a, 0.4, c1);
    CHECK(p.anchor == 1);
    CHECK(p.ground.x == doctest::Approx(-400.0));
    const std::vector<int> tie{0, 0};
    CHECK(majority_placement(tie, 0.4, c1).anchor == 0);
    const std::vector<int> right{1, 2};
    CHECK(majority_placement(right, 0.4, c1).anchor == 2);

    const auto c2 = CellGeometry::two_d(1000.0, 1e-6);
    const std::vector<int> tied{2, 2, 1, 0};
    const auto q = majority_placement(tied, 0.3, c2);
    CHECK(q.anchor == 0);
    CHECK(q.ground.x == 0.0);
    CHECK(q.ground.y == 0.0);
    const std::vector<int> third{0, 1, 3, 2};
    const auto t = majority_placement(third, 0.3, c2);
    CHECK(t.anchor == 3);
    CHECK(t.ground.x == doctest::Approx(-300.0));
    CHECK(t.ground.y == doctest::Approx(-300.0));

    CHECK_THROWS_AS(majority_placement(a, 1.2, c1), std::invalid_argument);
    CHECK_THROWS_AS(majority_placement(tied, 0.3, c1), std::invalid_argument);
}

TEST_CASE("placement is invariant under permutation of users")
{
    const auto cell = CellGeometry::from_mean_load(Dimension::TwoD, 1000.0, 8.0);
    Rng rng(3);
    std::mt19937 shuffler(4);
    for (int i = 0; i < 2000; ++i) {
        auto r = sample(cell, rng);
        const int before = majority_placement(r, 0.35, cell).anchor;
        std::shuffle(r.users.begin(), r.users.end(), shuffler);
        r.sector_counts = recount(r.users, cell);
        CHECK(majority_placement(r, 0.35, cell).anchor == before);
    }
}

TEST_CASE("identical seeds give identical realizations")
{
    const auto cell = CellGeometry::from_mean_load(Dimension::TwoD, 1000.0, 5.0);
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        const auto ra = sample(cell, a), rb = sample(cell, b);
        REQUIRE(ra.size() == rb.size());
        for (std::size_t u = 0; u < ra.size(); ++u) {
            CHECK(ra.users[u].x == rb.users[u].x);
            CHECK(ra.users[u].y == rb.users[u].y);
        }
        CHECK(ra.typical == rb.typical);
    }
}

TEST_CASE("empirical probabilities are thread-count independent")
{
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, 1000.0, 2.0);
    const auto a = empirical_displacement_probs(cell, 0.3, 100000, 77, 1);
    const auto b = empirical_displacement_probs(cell, 0.3, 100000, 77, 4);
    CHECK(a.q == b.q);
    CHECK(a.n_kept == b.n_kept);
}

TEST_CASE("empirical probabilities sum to one half for every beta")
{
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, 1000.0, 2.0);
    for (double beta : {0.0, 0.3, 1.0}) {
        const auto e = empirical_displacement_probs(cell, beta, 200000, 5, 0);
        const double sum = e.q[0] + e.q[1] + e.q[2];
        CHECK(std::abs(sum - 0.5) <= 3.0 * std::sqrt(0.25 / static_cast<double>(e.n_kept)));
        CHECK(e.n_kept <= e.n_total);
        CHECK(e.discard_rate() == doctest::Approx(std::exp(-2.0)).epsilon(0.05));
    }
}

TEST_CASE("empirical probabilities in the sparse limit")
{
    const double mu = 0.001;
    const auto cell = CellGeometry::from_mean_load(Dimension::OneD, 1000.0, mu);
    const auto n_total = static_cast<std::uint64_t>(std::ceil(1e6 / -std::expm1(-mu)));
    const auto e = empirical_displacement_probs(cell, 0.3, n_total, 2024, 0);
    CHECK(e.n_kept >= 990000);
    CHECK(std::abs(e.q[1] - 0.5) <= 3.0 * e.std_error[1]);
    CHECK(e.discard_rate() > 0.998);
}

TEST_CASE("realization csv dump")
{
    Realization r;
    r.users = {{1.0, 2.0}, {-3.0, 4.0}};
    r.sector_counts = {1, 1, 0, 0};
    r.typical = 1;
    std::ostringstream out;
    write_realizations_csv(out, std::vector<Realization>{r, Realization{}}, 9);
    CHECK(out.str() == std::string("# uavdeploy ") + kToolVersion +
                           " seed=9 realizations=2 dataset=realizations\n"
                           "realization_id,x,y,is_typical\n0,1,2,0\n0,-3,4,1\n");
}
