#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sel/analytics.hpp"
#include "sel/core.hpp"

namespace sel::renewal {

// splitmix64: 64-bit counter generator with avalanche finalizer. Chosen for
// its trivial, schedule-independent splitting: every stream is one seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1): the 53-bit mantissa draw is
    // offset by half an ulp so 0 and 1 are unreachable.
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53;
    }
};

// Stream seed for trajectory `index` under `master_seed`. A pure hash of
// (master, index), so ensemble generation is reproducible regardless of
// how trajectories are scheduled across threads.
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t index);

// One realization of the jump process on [0, horizon].
struct EventTrajectory {
    std::vector<double> events; // strictly increasing jump times
    double horizon = 0.0;
    std::uint64_t seed = 0;
};

// Windowed variance-to-mean ratio of event counts.
struct FanoEstimate {
    double window = 0.0;
    double mean_count = 0.0;
    double variance = 0.0;
    double fano = 0.0;
    double stderr_value = 0.0;
    std::size_t n_windows = 0;
};

enum class SamplingMode {
    Renewal,       // inter-event gaps drawn from the waiting-time law
    PoissonControl // exponential gaps at the same mean rate (shot-noise
                   // benchmark)
};

// Inverse-CDF draw: the unique t with W(t) = u, found by bracketed
// bisection plus a safeguarded Newton polish on the closed-form CDF.
// Throws NumericError if 200 refinement iterations do not converge.
double sample_waiting_time(const RateParams& params, double u);

// Cumulative sums of i.i.d. waiting-time draws, truncated at the horizon.
// Deterministic in (params, horizon, seed).
EventTrajectory generate_trajectory(const RateParams& params, double horizon,
                                    std::uint64_t seed,
                                    SamplingMode mode = SamplingMode::Renewal);

// n independent trajectories with per-index derived seeds, generated on
// `threads` workers (0 = hardware default). The result is bit-identical
// for every thread count.
std::vector<EventTrajectory> generate_ensemble(
    const RateParams& params, double horizon, std::size_t n,
    std::uint64_t master_seed, SamplingMode mode = SamplingMode::Renewal,
    unsigned threads = 0);

// Pooled Fano factor over non-overlapping windows. The first window of
// each trajectory is discarded as burn-in (the process starts on a jump,
// not in the stationary ensemble). Requires >= 30 pooled windows.
FanoEstimate fano_factor(std::span<const EventTrajectory> trajectories,
                         double window);

// Bartlett point-process periodogram, ensemble-averaged:
//   S(omega)/R = < |sum_k e^{-i omega t_k}|^2 > / (R T) - mean lobe,
// with R the pooled empirical rate and the deterministic mean lobe
// R 4 sin^2(omega T / 2) / (omega^2 T) subtracted. The frequency grid must
// be strictly increasing with min(grid) >= 20 pi / horizon, which keeps
// the finite-horizon leakage of the omega = 0 line out of the estimate.
analytics::SpectralCurve periodogram(
    std::span<const EventTrajectory> trajectories,
    std::span<const double> omega_grid);

} // namespace sel::renewal
