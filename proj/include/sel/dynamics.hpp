#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sel/core.hpp"

namespace sel::dynamics {

// Two-level amplitudes at one instant. c1 is the lower-state amplitude
// (initially 0), c2 the upper-state amplitude (initially 1). With gamma = 0
// the norm |c1|^2 + |c2|^2 is conserved; with damping it decays
// monotonically, and 2*gamma*|c1|^2 is the instantaneous jump density.
struct AmplitudeState {
    std::complex<double> c1{0.0, 0.0};
    std::complex<double> c2{0.0, 0.0};
    double t = 0.0;
};

// Undamped resonant Rabi oscillation: |C1(t)|^2 = sin^2(rabi * t / 2) for
// the initial condition C2(0) = 1, C1(0) = 0.
double rabi_probability(double rabi, double t);

// Closed-form lower-state amplitude of the damped system
//   dC1/dt = i*rabi*C2/2 - gamma*C1,  dC2/dt = i*rabi*C1/2,
// namely C1(t) = (i*rabi / 2 alpha) (e^{(alpha-gamma)t/2} - e^{-(alpha+gamma)t/2}),
// evaluated in regime-stable real/trig forms. gamma = 0 is the documented
// undamped limit (|C1|^2 reduces to the Rabi probability).
std::complex<double> damped_amplitude(double gamma, double rabi, double t);
std::complex<double> damped_amplitude(const RateParams& params, double t);

// Adaptive Dormand-Prince 4(5) integration of the amplitude system from
// C2(0) = 1, C1(0) = 0, with local error controlled to tol and the solution
// reported exactly at the requested sample times (the integrator lands on
// them). Serves as the independent oracle for the closed forms.
//   sample_times: strictly increasing, first entry >= 0
//   tol: in [1e-12, 1e-4], used as both absolute and relative target
std::vector<AmplitudeState> integrate_amplitudes(double gamma, double rabi,
                                                 std::span<const double> sample_times,
                                                 double tol);

// Convenience overload: 257 uniform sample times on [0, t_end].
std::vector<AmplitudeState> integrate_amplitudes(const RateParams& params,
                                                 double t_end, double tol);

} // namespace sel::dynamics
