#include "sel/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace sel::renewal {

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t index) {
    // Affine-in-index state plus the avalanche pass: both maps are
    // bijections of the 64-bit space, so distinct indices under one master
    // seed can never collide.
    SplitMix64 g{master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL};
    return g.next();
}

double sample_waiting_time(const RateParams& params, double u) {
    validate(params);
    if (!std::isfinite(u) || !(u > 0.0) || !(u < 1.0)) {
        throw ParameterError("renewal: u must lie strictly inside (0,1)");
    }

    int budget = 200;
    auto spend = [&budget]() {
        if (--budget < 0) {
            throw NumericError("renewal: inverse-CDF refinement did not converge");
        }
    };

    auto cdf = [&](double t) { return analytics::waiting_time_cdf(params, t); };

    // Bracket [lo, hi] with W(lo) < u <= W(hi), doubling out from the mean.
    double lo = 0.0;
    double hi = analytics::mean_waiting_time(params);
    while (cdf(hi) < u) {
        spend();
        lo = hi;
        hi *= 2.0;
    }

    // Coarse bisection narrows the bracket enough that Newton from the
    // midpoint stays well-behaved.
    while (hi - lo > 1e-3 * hi) {
        spend();
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Safeguarded Newton: every iterate stays inside the current bracket,
    // falling back to its midpoint whenever the Newton step leaves it.
    // Termination: |W(t) - u| at roundoff, or no representable progress.
    double t = 0.5 * (lo + hi);
    for (;;) {
        spend();
        const double residual = cdf(t) - u;
        if (residual > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        if (std::abs(residual) <= 1e-14) {
            break;
        }
        const double density = analytics::waiting_time_density(params, t);
        double next = density > 0.0 ? t - residual / density : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == t
            || hi - lo <= std::numeric_limits<double>::epsilon() * hi) {
            break;
        }
        t = next;
    }
    return t;
}

EventTrajectory generate_trajectory(const RateParams& params, double horizon,
                                    std::uint64_t seed, SamplingMode mode) {
    validate(params);
    if (!std::isfinite(horizon) || !(horizon > 0.0)) {
        throw ParameterError("renewal: horizon must be finite and > 0");
    }

    EventTrajectory trajectory;
    trajectory.horizon = horizon;
    trajectory.seed = seed;
    trajectory.events.reserve(
        static_cast<std::size_t>(horizon / analytics::mean_waiting_time(params))
        + 16);

    const double rate = analytics::mean_jump_rate(params);
    SplitMix64 rng{seed};
    double t = 0.0;
    for (;;) {
        const double u = rng.uniform();
        const double gap = mode == SamplingMode::Renewal
                               ? sample_waiting_time(params, u)
                               : -std::log(u) / rate;
        t += gap;
        if (t > horizon) {
            break;
        }
        trajectory.events.push_back(t);
    }
    return trajectory;
}

std::vector<EventTrajectory> generate_ensemble(const RateParams& params,
                                               double horizon, std::size_t n,
                                               std::uint64_t master_seed,
                                               SamplingMode mode,
                                               unsigned threads) {
    validate(params);
    if (n == 0) {
        throw ParameterError("renewal: ensemble size must be >= 1");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, n));

    std::vector<EventTrajectory> ensemble(n);
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            ensemble[i] = generate_trajectory(
                params, horizon, derive_stream_seed(master_seed, i), mode);
        }
        return ensemble;
    }

    // Strided static partition; every trajectory's RNG stream depends only
    // on its index, so the result is identical for any thread count.
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < n; i += threads) {
                    ensemble[i] = generate_trajectory(
                        params, horizon, derive_stream_seed(master_seed, i),
                        mode);
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& worker : workers) {
        worker.join();
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return ensemble;
}

FanoEstimate fano_factor(std::span<const EventTrajectory> trajectories,
                         double window) {
    if (trajectories.empty()) {
        throw InsufficientDataError("renewal: no trajectories given");
    }
    if (!std::isfinite(window) || !(window > 0.0)) {
        throw ParameterError("renewal: window must be finite and > 0");
    }

    std::vector<double> counts;
    for (const EventTrajectory& trajectory : trajectories) {
        const auto complete = static_cast<std::size_t>(
            std::floor(trajectory.horizon / window));
        if (complete < 2) {
            continue; // nothing beyond the discarded burn-in window
        }
        // Window k covers [k*window, (k+1)*window); k = 0 is burn-in.
        std::size_t cursor = 0;
        const std::vector<double>& events = trajectory.events;
        for (std::size_t k = 0; k < complete; ++k) {
            const double end = static_cast<double>(k + 1) * window;
            std::size_t count = 0;
            while (cursor < events.size() && events[cursor] < end) {
                ++cursor;
                ++count;
            }
            if (k > 0) {
                counts.push_back(static_cast<double>(count));
            }
        }
    }

    if (counts.size() < 30) {
        throw InsufficientDataError(
            "renewal: fewer than 30 pooled windows; lengthen horizons or add trajectories");
    }

    const double n = static_cast<double>(counts.size());
    double mean = 0.0;
    for (double c : counts) {
        mean += c;
    }
    mean /= n;
    if (!(mean > 0.0)) {
        throw InsufficientDataError("renewal: pooled windows contain no events");
    }
    double ss = 0.0;
    for (double c : counts) {
        const double d = c - mean;
        ss += d * d;
    }
    const double variance = ss / (n - 1.0);

    FanoEstimate estimate;
    estimate.window = window;
    estimate.mean_count = mean;
    estimate.variance = variance;
    estimate.fano = variance / mean;
    // Chi-square sampling noise of a variance ratio: sd ~ F sqrt(2/(n-1)).
    estimate.stderr_value = estimate.fano * std::sqrt(2.0 / (n - 1.0));
    estimate.n_windows = counts.size();
    return estimate;
}

analytics::SpectralCurve periodogram(
    std::span<const EventTrajectory> trajectories,
    std::span<const double> omega_grid) {
    if (trajectories.empty()) {
        throw InsufficientDataError("renewal: no trajectories given");
    }
    if (omega_grid.empty()) {
        throw ParameterError("renewal: frequency grid must be non-empty");
    }
    const double horizon = trajectories.front().horizon;
    for (const EventTrajectory& trajectory : trajectories) {
        if (trajectory.horizon != horizon) {
            throw ParameterError("renewal: trajectories must share one horizon");
        }
    }
    const double guard = 20.0 * 3.141592653589793238462643383279502884
                         / horizon;
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        if (!std::isfinite(omega_grid[i]) || !(omega_grid[i] > 0.0)) {
            throw ParameterError("renewal: frequencies must be finite and > 0");
        }
        if (i > 0 && !(omega_grid[i] > omega_grid[i - 1])) {
            throw ParameterError("renewal: frequency grid must be strictly increasing");
        }
    }
    if (omega_grid.front() < guard) {
        throw ParameterError(
            "renewal: lowest frequency is below the 20*pi/horizon guard");
    }

    std::size_t total_events = 0;
    for (const EventTrajectory& trajectory : trajectories) {
        total_events += trajectory.events.size();
    }
    if (total_events == 0) {
        throw InsufficientDataError("renewal: trajectories contain no events");
    }
    const double n = static_cast<double>(trajectories.size());
    const double rate = static_cast<double>(total_events) / (n * horizon);

    analytics::SpectralCurve curve;
    curve.kind = analytics::CurveKind::EstimatedJump;
    curve.omega_grid.assign(omega_grid.begin(), omega_grid.end());
    curve.values.resize(omega_grid.size());
    curve.stderr_values.resize(omega_grid.size());

    const double norm = 1.0 / (rate * horizon);
    for (std::size_t j = 0; j < omega_grid.size(); ++j) {
        const double omega = omega_grid[j];
        const double half_angle = std::sin(0.5 * omega * horizon);
        const double mean_lobe =
            rate * 4.0 * half_angle * half_angle / (omega * omega * horizon);
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const EventTrajectory& trajectory : trajectories) {
            double re = 0.0;
            double im = 0.0;
            for (double t : trajectory.events) {
                re += std::cos(omega * t);
                im -= std::sin(omega * t);
            }
            const double value = (re * re + im * im) * norm - mean_lobe;
            sum += value;
            sum_sq += value * value;
        }
        const double mean = sum / n;
        curve.values[j] = mean;
        curve.stderr_values[j] =
            trajectories.size() > 1
                ? std::sqrt(std::max(0.0, (sum_sq - n * mean * mean)
                                              / (n - 1.0))
                            / n)
                : 0.0;
    }
    return curve;
}

} // namespace sel::renewal
