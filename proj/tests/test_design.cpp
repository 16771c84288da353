#include <doctest.h>

#include <cmath>

#include "sel/analytics.hpp"
#include "sel/core.hpp"
#include "sel/design.hpp"

namespace design = sel::design;

TEST_CASE("well geometry round-trips") {
    const double d = 1.0e-7;
    const double omega = design::transition_frequency(d);
    CHECK(design::well_width(omega) == doctest::Approx(d).epsilon(1e-13));
    // 1.42 GHz hydrogen-line frequency: the documented 0.44 micrometre well.
    const double pi = 3.14159265358979323846;
    const double width = design::well_width(2.0 * pi * 1.42e9);
    CHECK(width == doctest::Approx(4.3828335599733093e-7).epsilon(1e-13));
    CHECK_THROWS_AS(design::well_width(0.0), sel::ParameterError);
    CHECK_THROWS_AS(design::transition_frequency(-1.0), sel::ParameterError);
}

TEST_CASE("energy levels of the two lowest well states") {
    const double d = 2.0e-7;
    const double e1 = design::energy_level(d, 1);
    const double e2 = design::energy_level(d, 2);
    CHECK(e2 == doctest::Approx(4.0 * e1).epsilon(1e-15)); // n^2 scaling
    // Level spacing defines the transition frequency.
    CHECK((e2 - e1) / sel::constants.hbar
          == doctest::Approx(design::transition_frequency(d)).epsilon(1e-14));
    CHECK_THROWS_AS(design::energy_level(d, 3), sel::ParameterError);
    CHECK_THROWS_AS(design::energy_level(d, 0), sel::ParameterError);
}

TEST_CASE("dipole element x12 = 16 d / (9 pi^2)") {
    CHECK(design::dipole_element(1.0)
          == doctest::Approx(0.18012654869748881).epsilon(1e-14));
    CHECK(design::dipole_element(0.0) == 0.0); // degenerate limit
    CHECK_THROWS_AS(design::dipole_element(-1.0), sel::ParameterError);
}

TEST_CASE("Rabi frequency from drive potential") {
    // Omega_R = (16 / 9 pi^2) e v / hbar, linear in v with v = 0 allowed.
    CHECK(design::rabi_from_potential(0.0) == 0.0);
    const double expected = 0.18012654869748881
                            * sel::constants.electron_charge
                            / sel::constants.hbar;
    CHECK(design::rabi_from_potential(1.0)
          == doctest::Approx(expected).epsilon(1e-13));
    CHECK(design::rabi_from_potential(2.0)
          == doctest::Approx(2.0 * expected).epsilon(1e-13));
    CHECK_THROWS_AS(design::rabi_from_potential(-1.0), sel::ParameterError);
}

TEST_CASE("coupling constant and energy-to-Rabi conversion") {
    CHECK(design::coupling_constant()
          == doctest::Approx(3057.4510855207217).epsilon(1e-13));
    const double b = design::coupling_constant();
    CHECK(design::rabi_from_energy(2.0, 1.0)
          == doctest::Approx(std::sqrt(2.0 * b)).epsilon(1e-14));
    // Omega_R^2 = b mu / volume round-trip.
    const double rabi = design::rabi_from_energy(1.0, 3.0e-10);
    CHECK(rabi * rabi * 3.0e-10 == doctest::Approx(b).epsilon(1e-14));
    CHECK_THROWS_AS(design::rabi_from_energy(0.0, 1.0), sel::ParameterError);
    CHECK_THROWS_AS(design::rabi_from_energy(1.0, 0.0), sel::ParameterError);
}

TEST_CASE("steady-state solver") {
    const double b = design::coupling_constant();
    SUBCASE("reference operating point: roots gamma tau_p = {1.25, 5}") {
        const double tau_p = 1.0e-6;
        const double volume = b * tau_p * tau_p / 12.5;
        const auto solution = design::steady_state_solve(1.0e6, tau_p, volume);
        CHECK(solution.mu == doctest::Approx(1.0).epsilon(1e-14));
        REQUIRE(solution.roots.size() == 2);
        CHECK(solution.roots[0].gamma
              == doctest::Approx(1.25e6).epsilon(1e-12));
        CHECK(solution.roots[1].gamma
              == doctest::Approx(5.0e6).epsilon(1e-12));
        CHECK(solution.roots[0].gamma < solution.roots[1].gamma);
        CHECK(solution.roots[0].a == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(solution.roots[1].a == doctest::Approx(4.0).epsilon(1e-12));
        // Quadratic residual 2 J g^2 - W^2 g + J W^2 vanishes at each root.
        const double w2 = solution.rabi * solution.rabi;
        for (const auto& root : solution.roots) {
            const double residual = 2.0 * 1.0e6 * root.gamma * root.gamma
                                    - w2 * root.gamma + 1.0e6 * w2;
            CHECK(std::abs(residual) <= 1e-12 * w2 * root.gamma);
        }
        // The smaller root is the sub-Poissonian branch.
        const sel::RateParams at_small{solution.roots[0].gamma, solution.rabi};
        CHECK(sel::analytics::detected_noise_level(at_small)
              == doctest::Approx(0.875).epsilon(1e-12));
    }
    SUBCASE("drive below 2 sqrt(2) J has no steady state") {
        // rabi = sqrt(b * mu / volume): large volume starves the coupling.
        CHECK_THROWS_AS(design::steady_state_solve(1.0, 1.0, 1000.0),
                        sel::NoSteadyStateError);
    }
    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(design::steady_state_solve(0.0, 1.0, 1.0),
                        sel::ParameterError);
        CHECK_THROWS_AS(design::steady_state_solve(1.0, -1.0, 1.0),
                        sel::ParameterError);
        CHECK_THROWS_AS(design::steady_state_solve(1.0, 1.0, 0.0),
                        sel::ParameterError);
    }
}

TEST_CASE("minimum-noise cavity preset") {
    const double tau_p = 1.0e-6;
    const double nu = 1.42e9;
    const auto cavity = design::minimum_noise_design(tau_p, nu);

    SUBCASE("operating point: mu = 1, a = 1/4") {
        CHECK(cavity.mu == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(cavity.a == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(cavity.gamma == doctest::Approx(1.25e6).epsilon(1e-14));
        CHECK(cavity.pump_rate == doctest::Approx(1.0e6).epsilon(1e-14));
        CHECK(cavity.rabi * cavity.rabi
              == doctest::Approx(8.0 * cavity.gamma * cavity.gamma).epsilon(1e-13));
        CHECK(cavity.tau_p == tau_p);
        CHECK(cavity.nu == nu);
    }
    SUBCASE("geometry: documented reference values") {
        CHECK(cavity.d == doctest::Approx(4.3828335599733093e-7).epsilon(1e-13));
        CHECK(cavity.volume / (tau_p * tau_p)
              == doctest::Approx(244.59608684165773).epsilon(1e-13));
        CHECK(cavity.plate_side()
              == doctest::Approx(0.023623664332776905).epsilon(1e-13));
        CHECK(cavity.plate_area()
              == doctest::Approx(cavity.volume / cavity.d).epsilon(1e-15));
    }
    SUBCASE("lumped-element resonance: L C omega^2 = 1") {
        const double w = cavity.omega();
        CHECK(cavity.inductance() * cavity.capacitance() * w * w
              == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("preset point solves its own steady-state condition") {
        const auto solution = design::steady_state_solve(
            cavity.pump_rate, cavity.tau_p, cavity.volume);
        REQUIRE(solution.roots.size() == 2);
        CHECK(solution.roots[0].gamma
              == doctest::Approx(cavity.gamma).epsilon(1e-12));
    }
    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(design::minimum_noise_design(0.0, nu),
                        sel::ParameterError);
        CHECK_THROWS_AS(design::minimum_noise_design(tau_p, -1.0),
                        sel::ParameterError);
    }
}
