#include "sel/design.hpp"

#include <cmath>
#include <string>

namespace sel::design {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

void require_positive(double value, const char* what) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw ParameterError(std::string("design: ") + what
                             + " must be finite and > 0");
    }
}

} // namespace

double CavityDesign::omega() const { return 2.0 * pi * nu; }

double CavityDesign::plate_area() const { return volume / d; }

double CavityDesign::plate_side() const { return std::sqrt(plate_area()); }

double CavityDesign::capacitance() const {
    return constants.vacuum_permittivity * plate_area() / d;
}

double CavityDesign::inductance() const {
    const double w = omega();
    return 1.0 / (capacitance() * w * w);
}

double transition_frequency(double d) {
    require_positive(d, "well width");
    return 3.0 * pi * pi * constants.hbar
           / (2.0 * constants.electron_mass * d * d);
}

double well_width(double omega) {
    require_positive(omega, "angular frequency");
    return std::sqrt(3.0 * pi * pi * constants.hbar
                     / (2.0 * constants.electron_mass * omega));
}

double energy_level(double d, int n) {
    require_positive(d, "well width");
    if (n != 1 && n != 2) {
        throw ParameterError("design: level index must be 1 or 2 (two-level model)");
    }
    const double hbar_pi = pi * constants.hbar;
    return hbar_pi * hbar_pi * n * n
           / (2.0 * constants.electron_mass * d * d);
}

double dipole_element(double d) {
    if (!std::isfinite(d) || d < 0.0) {
        throw ParameterError("design: well width must be finite and >= 0");
    }
    return 16.0 * d / (9.0 * pi * pi);
}

double rabi_from_potential(double v) {
    if (!std::isfinite(v) || v < 0.0) {
        throw ParameterError("design: potential must be finite and >= 0");
    }
    return 16.0 / (9.0 * pi * pi) * constants.electron_charge * v
           / constants.hbar;
}

double coupling_constant() {
    const double e = constants.electron_charge;
    return 1024.0 / (27.0 * pi) * e * e
           / (4.0 * pi * constants.vacuum_permittivity
              * constants.electron_mass);
}

double rabi_from_energy(double mu, double volume) {
    require_positive(mu, "reduced energy");
    require_positive(volume, "volume");
    return std::sqrt(coupling_constant() * mu / volume);
}

SteadyStateSolution steady_state_solve(double pump_rate, double tau_p,
                                       double volume) {
    require_positive(pump_rate, "pump rate");
    require_positive(tau_p, "photon lifetime");
    require_positive(volume, "volume");

    SteadyStateSolution out;
    out.mu = pump_rate * tau_p;
    out.rabi = rabi_from_energy(out.mu, volume);

    const double w2 = out.rabi * out.rabi;
    const double ratio = 2.0 * pump_rate / out.rabi; // 2J / Omega_R
    const double disc = 1.0 - 2.0 * ratio * ratio;   // 1 - 8 J^2 / Omega_R^2
    if (disc < 0.0) {
        throw NoSteadyStateError(
            "design: no steady state (rabi below 2*sqrt(2)*pump_rate)");
    }

    auto make_root = [&](double gamma) {
        return SteadyStateRoot{gamma, 2.0 * gamma * gamma / w2};
    };
    if (disc == 0.0) {
        out.roots.push_back(make_root(w2 / (4.0 * pump_rate)));
        return out;
    }
    // Larger root by the stable (+) formula; smaller root from the product
    // of roots Omega_R^2 / 2, avoiding the subtractive cancellation of the
    // (-) formula when the discriminant is close to 1.
    const double gamma_big = (1.0 + std::sqrt(disc)) * w2 / (4.0 * pump_rate);
    const double gamma_small = 0.5 * w2 / gamma_big;
    out.roots.push_back(make_root(gamma_small));
    out.roots.push_back(make_root(gamma_big));
    return out;
}

CavityDesign minimum_noise_design(double tau_p, double nu) {
    require_positive(tau_p, "photon lifetime");
    require_positive(nu, "transition frequency");

    CavityDesign design;
    design.tau_p = tau_p;
    design.nu = nu;
    design.d = well_width(2.0 * pi * nu);
    design.mu = 1.0;
    design.a = 0.25;
    design.gamma = 1.25 / tau_p;
    // a = 1/4 means Omega_R^2 = 8 gamma^2 = 12.5 / tau_p^2.
    design.rabi = design.gamma * std::sqrt(8.0);
    design.volume = coupling_constant() * design.mu
                    / (design.rabi * design.rabi);
    design.pump_rate = design.gamma / (1.0 + design.a);
    return design;
}

} // namespace sel::design
