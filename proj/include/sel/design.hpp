#pragma once

#include <vector>

#include "sel/core.hpp"

namespace sel::design {

// One real root of the steady-state condition J = gamma / (1 + a) with
// a = 2 gamma^2 / rabi^2.
struct SteadyStateRoot {
    double gamma = 0.0; // [1/s]
    double a = 0.0;     // dimensionless
};

// Both branches of the steady-state quadratic
//   2 J gamma^2 - rabi^2 gamma + J rabi^2 = 0,
// roots in increasing order (one entry when the discriminant vanishes).
struct SteadyStateSolution {
    double mu = 0.0;   // reduced resonator energy E / (hbar omega)
    double rabi = 0.0; // [rad/s]
    std::vector<SteadyStateRoot> roots;
};

// Complete physical operating point of the single-electron maser. All
// fields SI. The resonator geometry (plate area, capacitance, inductance)
// is derived from the stored fields, not stored independently.
struct CavityDesign {
    double d = 0.0;         // well width [m]
    double nu = 0.0;        // transition frequency [Hz]
    double volume = 0.0;    // capacitor volume [m^3]
    double tau_p = 0.0;     // photon lifetime [s]
    double pump_rate = 0.0; // J [1/s]
    double mu = 0.0;        // dimensionless
    double gamma = 0.0;     // [1/s]
    double rabi = 0.0;      // [rad/s]
    double a = 0.0;         // dimensionless

    double omega() const;       // 2 pi nu [rad/s]
    double plate_area() const;  // volume / d [m^2]
    double plate_side() const;  // sqrt(plate_area) [m]
    double capacitance() const; // eps0 * area / d [F]
    double inductance() const;  // 1 / (C omega^2) [H]
};

// omega = 3 pi^2 hbar / (2 m d^2): level spacing of the infinite square
// well between the two lowest states.
double transition_frequency(double d);

// Inverse of transition_frequency: d = sqrt(3 pi^2 hbar / (2 m omega)).
double well_width(double omega);

// E_n = pi^2 hbar^2 n^2 / (2 m d^2) for n in {1, 2}.
double energy_level(double d, int n);

// x12 = 16 d / (9 pi^2), the position matrix element between the two
// lowest well states. d = 0 is the documented degenerate limit (returns 0).
double dipole_element(double d);

// Omega_R = (16 / 9 pi^2) e v / hbar for peak potential v across the well.
double rabi_from_potential(double v);

// b = (1024 / 27 pi) e^2 / (4 pi eps0 m) [m^3/s^2], the coupling constant
// in Omega_R^2 = b mu / volume.
double coupling_constant();

// Omega_R = sqrt(b mu / volume).
double rabi_from_energy(double mu, double volume);

// Solves the steady-state condition for gamma given pump rate J, photon
// lifetime tau_p (sets mu = J tau_p) and capacitor volume (sets Omega_R).
// Throws NoSteadyStateError when rabi < 2 sqrt(2) J (negative discriminant).
SteadyStateSolution steady_state_solve(double pump_rate, double tau_p,
                                       double volume);

// The minimum-noise operating point: mu = 1, a = 1/4 (detected level 7/8),
// which fixes gamma = 1.25 / tau_p, Omega_R^2 = 12.5 / tau_p^2 and hence
// volume = b tau_p^2 / 12.5, with the well width set by the transition
// frequency nu.
CavityDesign minimum_noise_design(double tau_p, double nu);

} // namespace sel::design
