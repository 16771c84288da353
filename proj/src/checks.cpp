#include "sel/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "sel/analytics.hpp"
#include "sel/design.hpp"
#include "sel/dynamics.hpp"
#include "sel/oracles.hpp"
#include "sel/renewal.hpp"

namespace sel::checks {

namespace {

const RateParams kOverdamped{2.0, 1.0};
const RateParams kCritical{1.0, 1.0};
const RateParams kUnderdamped{1.0, 2.0};
const RateParams kRegimes[] = {kOverdamped, kCritical, kUnderdamped};
const RateParams kDesignPoint{1.25, 3.5355339059327378}; // a = 1/4

std::string describe(const char* format, double measured, double bound) {
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), format, measured, bound);
    return buffer;
}

CheckResult worst_case(std::string name, double worst, double bound) {
    CheckResult result;
    result.name = std::move(name);
    result.passed = worst <= bound;
    result.detail = describe("max deviation %.3g (bound %.3g)", worst, bound);
    return result;
}

double rel_diff(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

CheckResult normalization_quadrature() {
    double worst = 0.0;
    for (const RateParams& params : kRegimes) {
        auto density = [&](double t) {
            return analytics::waiting_time_density(params, t);
        };
        const double cutoff = oracles::waiting_time_upper_cutoff(params);
        const double total = oracles::integrate(density, 0.0, cutoff, 1e-12);
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst_case("normalization-quadrature", worst, 1e-9);
}

CheckResult cdf_quadrature() {
    double worst = 0.0;
    for (const RateParams& params : kRegimes) {
        for (double t : {0.3, 1.0, 2.5}) {
            auto density = [&](double s) {
                return analytics::waiting_time_density(params, s);
            };
            const double by_quadrature = oracles::integrate(density, 0.0, t, 1e-13);
            const double closed = analytics::waiting_time_cdf(params, t);
            worst = std::max(worst, std::abs(closed - by_quadrature));
        }
    }
    return worst_case("cdf-quadrature", worst, 1e-10);
}

CheckResult mean_quadrature() {
    double worst = 0.0;
    for (const RateParams& params : kRegimes) {
        auto weighted = [&](double t) {
            return t * analytics::waiting_time_density(params, t);
        };
        const double cutoff = oracles::waiting_time_upper_cutoff(params);
        const double numeric = oracles::integrate(weighted, 0.0, cutoff, 1e-12);
        const double closed = analytics::mean_waiting_time(params);
        worst = std::max(worst, rel_diff(numeric, closed));
    }
    return worst_case("mean-quadrature", worst, 1e-8);
}

CheckResult laplace_quadrature() {
    double worst = 0.0;
    const struct {
        RateParams params;
        std::complex<double> p;
    } cases[] = {
        {kCritical, {0.5, 0.5}},
        {kOverdamped, {1.0, 0.0}},
        {kUnderdamped, {0.4, 1.2}},
    };
    for (const auto& c : cases) {
        const std::complex<double> numeric =
            oracles::laplace_transform_numeric(c.params, c.p, 1e-10);
        const std::complex<double> closed =
            analytics::waiting_time_laplace(c.params, c.p);
        worst = std::max(worst, std::abs(closed - numeric));
    }
    return worst_case("laplace-quadrature", worst, 1e-6);
}

CheckResult moment_identity() {
    double worst = 0.0;
    for (const RateParams& params : kRegimes) {
        auto transform_real = [&](double p) {
            return analytics::waiting_time_laplace(params, {p, 0.0}).real();
        };
        const double slope =
            oracles::central_difference(transform_real, 0.0, 1e-5);
        worst = std::max(
            worst, rel_diff(-slope, analytics::mean_waiting_time(params)));
    }
    return worst_case("moment-identity", worst, 1e-7);
}

CheckResult geometric_series() {
    const std::complex<double> p{0.0, 3.0};
    const std::complex<double> closed =
        analytics::event_correlation_laplace(kCritical, p);
    const std::complex<double> series =
        oracles::event_correlation_series(kCritical, p, 200);
    return worst_case("geometric-series", std::abs(closed - series), 1e-9);
}

CheckResult spectral_transform_consistency() {
    double worst = 0.0;
    const double gamma = kDesignPoint.gamma;
    for (int i = 0; i < 50; ++i) {
        const double omega =
            0.1 * gamma * std::pow(100.0, static_cast<double>(i) / 49.0);
        const std::complex<double> g =
            analytics::event_correlation_laplace(kDesignPoint, {0.0, omega});
        const double via_transform = 1.0 + 2.0 * g.real();
        const double closed =
            analytics::jump_spectral_density(kDesignPoint, omega);
        worst = std::max(worst, std::abs(closed - via_transform));
    }
    return worst_case("spectral-transform-consistency", worst, 1e-9);
}

CheckResult pump_gain_difference() {
    double worst = 0.0;
    for (const RateParams& params : kRegimes) {
        const double gamma = params.gamma;
        const double rabi0 = params.rabi;
        // R as a function of the reduced energy mu, with rabi^2 scaled by mu
        // relative to the reference point mu = 1.
        auto rate_of_mu = [&](double mu) {
            const RateParams scaled{gamma, rabi0 * std::sqrt(mu)};
            return analytics::mean_jump_rate(scaled);
        };
        const double h = 1e-6;
        const double slope = oracles::central_difference(rate_of_mu, 1.0, h);
        const double gain = slope / rate_of_mu(1.0); // (mu/R) dR/dmu at mu=1
        worst = std::max(
            worst, std::abs(gain - analytics::pump_feedback_gain(params)));
    }
    return worst_case("pump-gain-difference", worst, 1e-6);
}

CheckResult detected_level_identity() {
    double worst = 0.0;
    for (double a : {0.05, 0.25, 0.5, 1.0, 4.0, 25.0}) {
        const RateParams params{1.0, std::sqrt(2.0 / a)};
        const double fano0 = analytics::zero_frequency_fano(params);
        const double gain = analytics::pump_feedback_gain(params);
        const double combined =
            (fano0 + gain * gain) / ((1.0 - gain) * (1.0 - gain));
        worst = std::max(
            worst,
            rel_diff(combined, analytics::detected_noise_level(params)));
    }
    return worst_case("detected-level-identity", worst, 1e-12);
}

CheckResult regime_continuity() {
    double worst = 0.0;
    for (double sign : {1.0, -1.0}) {
        const double gamma = std::sqrt(1.0 + sign * 1e-8);
        const RateParams params{gamma, 1.0};
        for (int i = 0; i < 20; ++i) {
            const double t =
                0.1 * std::pow(100.0, static_cast<double>(i) / 19.0);
            const double general = analytics::waiting_time_density(params, t);
            const double critical_limit = 0.5 * gamma * t * t
                                          * std::exp(-gamma * t);
            worst = std::max(worst, rel_diff(general, critical_limit));
        }
    }
    return worst_case("regime-continuity", worst, 1e-6);
}

CheckResult dynamics_oracle(std::uint64_t seed) {
    renewal::SplitMix64 rng{seed};
    std::vector<RateParams> sets = {kOverdamped, kCritical, kUnderdamped};
    while (sets.size() < 20) {
        const double gamma = 0.1 + 4.9 * rng.uniform();
        const double rabi = 0.1 + 4.9 * rng.uniform();
        sets.push_back(RateParams{gamma, rabi});
    }
    double worst = 0.0;
    for (const RateParams& params : sets) {
        std::vector<double> times(50);
        for (int i = 0; i < 50; ++i) {
            times[static_cast<std::size_t>(i)] =
                (i + 1) * (10.0 / params.gamma) / 50.0;
        }
        const auto trajectory = dynamics::integrate_amplitudes(
            params.gamma, params.rabi, times, 1e-9);
        for (const auto& state : trajectory) {
            const std::complex<double> closed =
                dynamics::damped_amplitude(params, state.t);
            worst = std::max(worst, std::abs(closed - state.c1));
        }
    }
    return worst_case("dynamics-oracle", worst, 1e-6);
}

CheckResult steady_state_residual() {
    const double b = design::coupling_constant();
    const auto solution = design::steady_state_solve(1.0, 1.0, b / 12.5);
    double worst = 0.0;
    for (const auto& root : solution.roots) {
        const double residual =
            std::abs(1.0 * (1.0 + root.a) - root.gamma) / root.gamma;
        worst = std::max(worst, residual);
    }
    CheckResult result = worst_case("steady-state-residual", worst, 1e-12);
    if (solution.roots.size() != 2) {
        result.passed = false;
        result.detail += "; expected 2 roots";
    } else {
        const RateParams at_small{solution.roots.front().gamma, solution.rabi};
        const double level = analytics::detected_noise_level(at_small);
        if (std::abs(level - 0.875) > 1e-9) {
            result.passed = false;
            result.detail += describe("; smaller-root level %.12g (want %.12g)",
                                      level, 0.875);
        }
    }
    return result;
}

CheckResult design_roundtrip() {
    const design::CavityDesign cavity =
        design::minimum_noise_design(1e-6, 1.42e9);
    double worst = 0.0;
    worst = std::max(worst, rel_diff(design::transition_frequency(cavity.d),
                                     cavity.omega()));
    worst = std::max(worst, rel_diff(cavity.mu,
                                     cavity.pump_rate * cavity.tau_p));
    worst = std::max(
        worst,
        rel_diff(design::rabi_from_energy(cavity.mu, cavity.volume),
                 cavity.rabi));
    worst = std::max(worst, rel_diff(cavity.pump_rate,
                                     cavity.gamma / (1.0 + cavity.a)));
    const auto solution = design::steady_state_solve(
        cavity.pump_rate, cavity.tau_p, cavity.volume);
    double root_error = 1.0;
    for (const auto& root : solution.roots) {
        root_error = std::min(root_error, std::abs(root.a - 0.25));
    }
    worst = std::max(worst, root_error);
    return worst_case("design-roundtrip", worst, 1e-9);
}

CheckResult sample_mean(std::uint64_t seed) {
    const RateParams params{1.0, std::sqrt(2.0)}; // a = 1, mean 2
    renewal::SplitMix64 rng{renewal::derive_stream_seed(seed, 1001)};
    constexpr int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += renewal::sample_waiting_time(params, rng.uniform());
    }
    const double mean = sum / n;
    CheckResult result;
    result.name = "sample-mean";
    result.passed = std::abs(mean - 2.0) <= 0.01;
    result.detail = describe("mean of 1e6 draws %.6g (want 2 +- %.2g)", mean, 0.01);
    return result;
}

CheckResult ks_inverse_cdf(std::uint64_t seed) {
    double worst = 0.0;
    constexpr int n = 100000;
    const double bound = 1.63 / std::sqrt(static_cast<double>(n));
    std::uint64_t stream = 2501;
    for (const RateParams& params : kRegimes) {
        renewal::SplitMix64 rng{renewal::derive_stream_seed(seed, stream++)};
        std::vector<double> samples(n);
        for (int i = 0; i < n; ++i) {
            samples[static_cast<std::size_t>(i)] =
                renewal::sample_waiting_time(params, rng.uniform());
        }
        std::sort(samples.begin(), samples.end());
        auto cdf = [&](double t) {
            return analytics::waiting_time_cdf(params, t);
        };
        worst = std::max(worst, oracles::ks_statistic(samples, cdf));
    }
    return worst_case("ks-inverse-cdf", worst, bound);
}

CheckResult rate_consistency(std::uint64_t seed, unsigned threads) {
    const auto ensemble = renewal::generate_ensemble(
        kDesignPoint, 500.0, 50, renewal::derive_stream_seed(seed, 3001),
        renewal::SamplingMode::Renewal, threads);
    std::vector<double> rates;
    rates.reserve(ensemble.size());
    double mean = 0.0;
    for (const auto& trajectory : ensemble) {
        rates.push_back(static_cast<double>(trajectory.events.size())
                        / trajectory.horizon);
        mean += rates.back();
    }
    mean /= static_cast<double>(rates.size());
    double ss = 0.0;
    for (double r : rates) {
        ss += (r - mean) * (r - mean);
    }
    const double stderr_mean =
        std::sqrt(ss / (static_cast<double>(rates.size()) - 1.0)
                  / static_cast<double>(rates.size()));
    const double expected = analytics::mean_jump_rate(kDesignPoint);
    CheckResult result;
    result.name = "rate-consistency";
    result.passed = std::abs(mean - expected) <= 3.0 * stderr_mean;
    result.detail = describe("rate %.6g vs expected %.6g (3-sigma window)",
                             mean, expected);
    return result;
}

CheckResult fano_window(std::uint64_t seed, unsigned threads) {
    const auto ensemble = renewal::generate_ensemble(
        kDesignPoint, 5050.0, 100, renewal::derive_stream_seed(seed, 4001),
        renewal::SamplingMode::Renewal, threads);
    const auto estimate = renewal::fano_factor(ensemble, 100.0);
    const double expected = analytics::zero_frequency_fano(kDesignPoint);
    CheckResult result;
    result.name = "fano-window";
    result.passed = std::abs(estimate.fano - expected) <= 0.05;
    result.detail = describe("fano %.4g vs asymptote %.4g (+-0.05)",
                             estimate.fano, expected);
    return result;
}

CheckResult poisson_control(std::uint64_t seed, unsigned threads) {
    const RateParams params{1.0, std::sqrt(2.0)};
    const auto ensemble = renewal::generate_ensemble(
        params, 2020.0, 100, renewal::derive_stream_seed(seed, 5001),
        renewal::SamplingMode::PoissonControl, threads);
    const auto estimate = renewal::fano_factor(ensemble, 20.0);
    CheckResult result;
    result.name = "poisson-control";
    result.passed = std::abs(estimate.fano - 1.0) <= 0.05;
    result.detail = describe("fano %.4g vs shot level 1 (+-%.2g)",
                             estimate.fano, 0.05);
    return result;
}

} // namespace

std::vector<CheckResult> run_checks(const Options& options) {
    std::vector<CheckResult> results;
    results.push_back(normalization_quadrature());
    results.push_back(cdf_quadrature());
    results.push_back(mean_quadrature());
    results.push_back(laplace_quadrature());
    results.push_back(moment_identity());
    results.push_back(geometric_series());
    results.push_back(spectral_transform_consistency());
    results.push_back(pump_gain_difference());
    results.push_back(detected_level_identity());
    results.push_back(regime_continuity());
    results.push_back(dynamics_oracle(options.seed));
    results.push_back(steady_state_residual());
    results.push_back(design_roundtrip());
    if (!options.quick) {
        results.push_back(sample_mean(options.seed));
        results.push_back(ks_inverse_cdf(options.seed));
        results.push_back(rate_consistency(options.seed, options.threads));
        results.push_back(fano_window(options.seed, options.threads));
        results.push_back(poisson_control(options.seed, options.threads));
    }
    if (options.inject_fault) {
        results.push_back(CheckResult{
            "injected-fault", false,
            "deliberate failure requested via the fault-injection flag"});
    }
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& result : results) {
        if (!result.passed) {
            return false;
        }
    }
    return true;
}

} // namespace sel::checks
