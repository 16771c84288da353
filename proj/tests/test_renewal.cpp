#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sel/analytics.hpp"
#include "sel/core.hpp"
#include "sel/renewal.hpp"

namespace renewal = sel::renewal;
namespace analytics = sel::analytics;

namespace {

const sel::RateParams quarter{1.25, std::sqrt(12.5)};

} // namespace

TEST_CASE("splitmix64 generator") {
    SUBCASE("known first output from seed 0") {
        renewal::SplitMix64 rng{0};
        // Published reference value of the splitmix64 sequence at seed 0.
        CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    }
    SUBCASE("deterministic per seed, distinct across seeds") {
        renewal::SplitMix64 a{42};
        renewal::SplitMix64 b{42};
        renewal::SplitMix64 c{43};
        const std::uint64_t a1 = a.next();
        CHECK(a1 == b.next());
        CHECK(a1 != c.next());
    }
    SUBCASE("uniform draws lie strictly inside (0,1)") {
        renewal::SplitMix64 rng{7};
        double lo = 1.0;
        double hi = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double u = rng.uniform();
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
        CHECK(lo > 0.0);
        CHECK(hi < 1.0);
    }
}

TEST_CASE("stream seeds are deterministic and collision-free in practice") {
    const std::uint64_t master = 12345;
    CHECK(renewal::derive_stream_seed(master, 0)
          == renewal::derive_stream_seed(master, 0));
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        seeds.push_back(renewal::derive_stream_seed(master, i));
    }
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
    CHECK(renewal::derive_stream_seed(1, 5) != renewal::derive_stream_seed(2, 5));
}

TEST_CASE("inverse-CDF sampling") {
    SUBCASE("W(sample(u)) = u to high accuracy in all regimes") {
        const std::vector<sel::RateParams> regimes{
            {2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}};
        for (const auto& params : regimes) {
            for (double u : {1e-6, 0.1, 0.5, 0.9, 0.999999}) {
                const double t = renewal::sample_waiting_time(params, u);
                CHECK(analytics::waiting_time_cdf(params, t)
                      == doctest::Approx(u).epsilon(1e-10));
            }
        }
    }
    SUBCASE("monotone in u") {
        const double t1 = renewal::sample_waiting_time(quarter, 0.2);
        const double t2 = renewal::sample_waiting_time(quarter, 0.6);
        CHECK(t1 < t2);
    }
    SUBCASE("u outside (0,1) is rejected") {
        CHECK_THROWS_AS(renewal::sample_waiting_time(quarter, 0.0),
                        sel::ParameterError);
        CHECK_THROWS_AS(renewal::sample_waiting_time(quarter, 1.0),
                        sel::ParameterError);
        CHECK_THROWS_AS(renewal::sample_waiting_time(quarter, -0.5),
                        sel::ParameterError);
    }
}

TEST_CASE("trajectory generation") {
    SUBCASE("events strictly increasing within the horizon") {
        const auto trajectory =
            renewal::generate_trajectory(quarter, 200.0, 99);
        REQUIRE(!trajectory.events.empty());
        CHECK(trajectory.horizon == 200.0);
        CHECK(trajectory.seed == 99);
        CHECK(trajectory.events.front() > 0.0);
        CHECK(trajectory.events.back() <= 200.0);
        CHECK(std::is_sorted(trajectory.events.begin(), trajectory.events.end()));
        for (std::size_t i = 1; i < trajectory.events.size(); ++i) {
            CHECK(trajectory.events[i] > trajectory.events[i - 1]);
        }
    }
    SUBCASE("deterministic in the seed") {
        const auto a = renewal::generate_trajectory(quarter, 100.0, 7);
        const auto b = renewal::generate_trajectory(quarter, 100.0, 7);
        const auto c = renewal::generate_trajectory(quarter, 100.0, 8);
        CHECK(a.events == b.events);
        CHECK(a.events != c.events);
    }
    SUBCASE("event count is near horizon / mean waiting time") {
        const auto trajectory =
            renewal::generate_trajectory(quarter, 20000.0, 4242);
        // mean rate is 1.0 at this operating point; allow 5 sigma of the
        // asymptotic count variance fano0 * R * T.
        const double expected = 20000.0;
        const double sigma = std::sqrt(0.52 * expected);
        CHECK(std::abs(static_cast<double>(trajectory.events.size()) - expected)
              <= 5.0 * sigma);
    }
}

TEST_CASE("ensemble generation is schedule-independent") {
    const auto one = renewal::generate_ensemble(quarter, 150.0, 12, 555,
                                                renewal::SamplingMode::Renewal, 1);
    const auto four = renewal::generate_ensemble(quarter, 150.0, 12, 555,
                                                 renewal::SamplingMode::Renewal, 4);
    REQUIRE(one.size() == 12);
    REQUIRE(four.size() == 12);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].seed == four[i].seed);
        CHECK(one[i].events == four[i].events);
    }
    CHECK_THROWS_AS(renewal::generate_ensemble(quarter, 150.0, 0, 555),
                    sel::ParameterError);
}

TEST_CASE("fano factor estimator") {
    SUBCASE("insufficient windows raise") {
        const auto ensemble = renewal::generate_ensemble(quarter, 300.0, 1, 77);
        CHECK_THROWS_AS(renewal::fano_factor(ensemble, 200.0),
                        sel::InsufficientDataError);
    }
    SUBCASE("window must be positive and fit the horizon") {
        const auto ensemble = renewal::generate_ensemble(quarter, 300.0, 2, 77);
        CHECK_THROWS_AS(renewal::fano_factor(ensemble, 0.0),
                        sel::ParameterError);
        CHECK_THROWS_AS(renewal::fano_factor(ensemble, -5.0),
                        sel::ParameterError);
    }
    SUBCASE("Poisson control gives fano near 1") {
        const auto ensemble = renewal::generate_ensemble(
            quarter, 2000.0, 40, 2024, renewal::SamplingMode::PoissonControl);
        const auto estimate = renewal::fano_factor(ensemble, 50.0);
        CHECK(estimate.n_windows >= 30);
        CHECK(std::abs(estimate.fano - 1.0) <= 5.0 * estimate.stderr_value);
        CHECK(std::abs(estimate.fano - 1.0) <= 0.1);
    }
    SUBCASE("renewal process at a = 1/4 is sub-Poissonian in long windows") {
        const auto ensemble = renewal::generate_ensemble(quarter, 4000.0, 30, 99);
        const auto estimate = renewal::fano_factor(ensemble, 200.0);
        CHECK(estimate.fano < 0.7); // analytic long-window value 0.52
        CHECK(estimate.mean_count == doctest::Approx(200.0).epsilon(0.05));
    }
}

TEST_CASE("periodogram estimator") {
    const auto ensemble = renewal::generate_ensemble(quarter, 500.0, 20, 31415);
    SUBCASE("frequency guard: grid must start at or above 20 pi / horizon") {
        const std::vector<double> too_low{0.05, 1.0}; // 20 pi / 500 = 0.1257
        CHECK_THROWS_AS(renewal::periodogram(ensemble, too_low),
                        sel::ParameterError);
    }
    SUBCASE("grid must be strictly increasing") {
        const std::vector<double> bad{1.0, 1.0, 2.0};
        CHECK_THROWS_AS(renewal::periodogram(ensemble, bad),
                        sel::ParameterError);
    }
    SUBCASE("horizons must match across trajectories") {
        auto mixed = ensemble;
        mixed.push_back(renewal::generate_trajectory(quarter, 400.0, 1));
        const std::vector<double> grid{0.2, 1.0, 5.0};
        CHECK_THROWS_AS(renewal::periodogram(mixed, grid),
                        sel::ParameterError);
    }
    SUBCASE("estimate carries the grid, stderr, and estimated kind") {
        const std::vector<double> grid{0.2, 1.0, 5.0};
        const auto curve = renewal::periodogram(ensemble, grid);
        CHECK(curve.kind == analytics::CurveKind::EstimatedJump);
        REQUIRE(curve.omega_grid.size() == grid.size());
        REQUIRE(curve.values.size() == grid.size());
        REQUIRE(curve.stderr_values.size() == grid.size());
        for (double se : curve.stderr_values) {
            CHECK(se > 0.0);
        }
    }
    SUBCASE("Poisson control spectrum sits at shot noise") {
        const auto control = renewal::generate_ensemble(
            quarter, 1000.0, 150, 60601,
            renewal::SamplingMode::PoissonControl);
        const std::vector<double> grid{0.3, 1.0, 3.0, 9.0};
        const auto curve = renewal::periodogram(control, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(curve.values[i] - 1.0)
                  <= std::max(5.0 * curve.stderr_values[i], 0.3));
        }
    }
}
