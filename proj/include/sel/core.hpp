#pragma once

#include <complex>
#include <stdexcept>

namespace sel {

// Invalid argument values: non-finite inputs, out-of-domain times, bad grids.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure: root-finder stall, evaluation at a pole, step underflow.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Not enough samples or windows to form the requested estimate.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The steady-state quadratic has no real root (drive too weak for the pump).
struct NoSteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CODATA 2018. Values fixed at construction; >= 10 significant digits.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;                  // J s
    double electron_charge = 1.602176634e-19;      // C (exact)
    double electron_mass = 9.1093837015e-31;       // kg
    double vacuum_permittivity = 8.8541878128e-12; // F/m
};

inline constexpr PhysicalConstants constants{};

// Stochastic-engine parameters. Unit-agnostic: any consistent time unit.
//   gamma: half the jump probability density (the density itself is 2*gamma)
//   rabi:  Rabi angular frequency Omega_R
struct RateParams {
    double gamma = 0.0; // [1/time]
    double rabi = 0.0;  // [rad/time]
};

enum class DampingRegime { Overdamped, Critical, Underdamped };

// a = 2 gamma^2 / Omega_R^2, alpha = sqrt(gamma^2 - Omega_R^2).
// alpha is real when gamma >= Omega_R, pure imaginary otherwise.
struct DerivedParams {
    double a = 0.0;
    std::complex<double> alpha{0.0, 0.0};
    DampingRegime regime = DampingRegime::Critical;
};

// Relative half-width of the band around gamma = Omega_R classified as
// Critical. Inside it the exact limit formulas are used instead of the
// general forms, whose parameters degenerate as alpha -> 0.
inline constexpr double critical_band = 1e-9;

// Throws ParameterError unless both rates are finite and strictly positive.
void validate(const RateParams& params);

// Regime split of alpha^2 = gamma^2 - rabi^2. gamma = 0 is allowed here so
// that the undamped limit operations in dynamics can reuse the classifier.
DampingRegime classify(double gamma, double rabi);

DerivedParams derive(const RateParams& params);

const char* to_string(DampingRegime regime);

} // namespace sel
