#pragma once

#include <complex>
#include <functional>
#include <span>

#include "sel/core.hpp"

namespace sel::oracles {

// Adaptive Gauss-Kronrod quadrature of f over [lo, hi] to the requested
// absolute tolerance. Throws NumericError if the integrator cannot reach it.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-12);

// Truncation point for tail integrals of the waiting-time density. The
// tail decays like e^{-(gamma - Re alpha) t} with
// (gamma - Re alpha) * cutoff >= 20 + 40/a, so the discarded mass is below
// ~e^{-(20 + 40/a)}: under 1e-11 for a <= 10 and e^{-40} when alpha is not
// real. Adequate for the 1e-9..1e-10 oracle tolerances used on it.
double waiting_time_upper_cutoff(const RateParams& params);

// Numeric transform integral(0, cutoff) w(t) e^{-p t} dt by quadrature on
// the real and imaginary parts. Independent check of the rational form.
std::complex<double> laplace_transform_numeric(const RateParams& params,
                                               std::complex<double> p,
                                               double abs_tol = 1e-9);

// Truncated renewal sum  sum_{k=1..terms} w~(p)^k. Converges to the
// event-correlation transform whenever |w~(p)| < 1.
std::complex<double> event_correlation_series(const RateParams& params,
                                              std::complex<double> p,
                                              int terms);

// Two-sided Kolmogorov-Smirnov distance between sorted samples and a CDF.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

// Central difference (f(x+h) - f(x-h)) / (2h).
double central_difference(const std::function<double(double)>& f, double x,
                          double h);

} // namespace sel::oracles
