#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sel/core.hpp"

namespace sel::analytics {

enum class CurveKind { AnalyticJump, EstimatedJump, DetectedLoop };

// Sampled jump-rate spectral density S(Omega)/R on a frequency grid.
// stderr_values is filled for estimated curves only.
struct SpectralCurve {
    std::vector<double> omega_grid;
    std::vector<double> values;
    std::vector<double> stderr_values;
    CurveKind kind = CurveKind::AnalyticJump;
};

// Zero-frequency closed-loop algebra of the pump-feedback linearization.
//   feedback_gain  A = a/(1+a), in (0,1)
//   detected_level S_dD/D = 2a^2 - a + 1, >= 7/8
struct ClosedLoopNoise {
    double feedback_gain = 0.0;
    double detected_level = 0.0;
};

struct OperatingPoint {
    double a_opt = 0.0;
    double level = 0.0;
};

// Waiting-time density w(t) between consecutive jumps, conditioned on a jump
// at t = 0. Evaluated in the regime-stable real form:
//   overdamped   2 g (W/alpha)^2 e^{-g t} sinh^2(alpha t / 2)
//   underdamped  2 g (W/beta)^2  e^{-g t} sin^2(beta t / 2),  beta^2 = W^2 - g^2
//   critical     (g W^2 / 2) t^2 e^{-g t}
// with g = gamma, W = Omega_R. All three agree with
// (g W^2 / 2 alpha^2)(e^{(alpha-g)t} + e^{-(alpha+g)t} - 2 e^{-g t}).
double waiting_time_density(const RateParams& params, double t);

// W(t) = integral of w over [0, t]; closed-form antiderivative per regime.
double waiting_time_cdf(const RateParams& params, double t);

// Rational transform w~(p) = g W^2 / (p^3 + 3g p^2 + (2g^2 + W^2) p + g W^2).
// Throws NumericError at (or numerically near) a pole of the denominator.
std::complex<double> waiting_time_laplace(const RateParams& params,
                                          std::complex<double> p);

// <tau> = (1 + a) / gamma. The reciprocal is the mean jump rate R.
double mean_waiting_time(const RateParams& params);
double mean_jump_rate(const RateParams& params);

// G~(p) = w~(p) / (1 - w~(p)), evaluated through the factored form
// g W^2 / (p (p^2 + 3g p + 2g^2 + W^2)) to avoid the 1 - w~ cancellation.
// Simple pole at p = 0 with residue R; evaluation there throws.
std::complex<double> event_correlation_laplace(const RateParams& params,
                                               std::complex<double> p);

// S_r(Omega)/R = 1 - 3a / ((1+a)^2 + a(5a/4 - 1)(Omega/g)^2 + (a^2/4)(Omega/g)^4).
// Even in Omega; the delta term 2 pi R delta(Omega) carried by the full
// spectral density is excluded by contract. Equals 1 + 2 Re G~(i Omega) for
// Omega > 0.
double jump_spectral_density(const RateParams& params, double omega);

// Omega -> 0 limit: 1 - 3a/(1+a)^2. Long-window Fano factor of the counts.
double zero_frequency_fano(const RateParams& params);

// A = (mu/R) dR/dmu = a/(1+a), from R(mu) with Omega_R^2 proportional to mu.
double pump_feedback_gain(const RateParams& params);

// S_dD/D = (S_r/R + A^2)/(1-A)^2 = 2a^2 - a + 1 at zero Fourier frequency.
double detected_noise_level(const RateParams& params);

// Minimizes the detected level over a > 0 by root-finding the derivative of
// the implemented level function. Returns (1/4, 7/8) to machine precision.
OperatingPoint optimal_operating_point();

SpectralCurve analytic_jump_curve(const RateParams& params,
                                  std::span<const double> omega_grid);

ClosedLoopNoise closed_loop_noise(const RateParams& params);

} // namespace sel::analytics
