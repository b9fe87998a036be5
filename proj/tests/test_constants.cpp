#include <doctest.h>

#include "spindot/constants.hpp"

using namespace spindot;

namespace {
bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("physical constants match CODATA literals to >= 6 significant digits") {
    CHECK(close_rel(constants::hbar, 1.054571817e-34, 1e-9));
    CHECK(close_rel(constants::electron_charge, 1.602176634e-19, 1e-12));
    CHECK(close_rel(constants::free_electron_mass, 9.1093837015e-31, 1e-10));
    CHECK(close_rel(constants::bohr_magneton, 9.2740100783e-24, 1e-10));
    CHECK(close_rel(constants::boltzmann, 1.380649e-23, 1e-12));
    CHECK(constants::speed_of_light == 299792458.0);
    CHECK(close_rel(constants::hbar_evs, 6.582119569e-16, 1e-9));
    CHECK(close_rel(constants::bohr_magneton_ev, 5.7883818060e-5, 1e-9));
}

TEST_CASE("thermal timescale") {
    // hand evaluation of hbar/k with CODATA constants
    CHECK(close_rel(thermal_timescale(1.0), 7.638232582258e-12, 1e-11));
    // inverse proportionality
    CHECK(close_rel(thermal_timescale(0.001), 1000.0 * thermal_timescale(1.0), 1e-14));
    CHECK_THROWS_AS(thermal_timescale(0.0), DomainError);
    CHECK_THROWS_AS(thermal_timescale(-1.0), DomainError);
}

TEST_CASE("coulomb blockade energy") {
    // hand evaluation e^2/2C at 1 aF
    const double e1af = coulomb_blockade_energy(1e-18);
    CHECK(close_rel(e1af, 1.283484983268e-20, 1e-11));
    CHECK(close_rel(joules_to_ev(e1af) * 1e3, 80.10883170, 1e-9));  // ~80 meV
    // doubling C halves the energy
    CHECK(close_rel(coulomb_blockade_energy(2e-18), e1af / 2.0, 1e-14));
    CHECK_THROWS_AS(coulomb_blockade_energy(0.0), DomainError);

    // occupancy check at 4 K: 80 meV >> 0.34 meV
    CHECK(single_occupancy_ok(1e-18, 4.0));
    CHECK(close_rel(joules_to_ev(constants::boltzmann * 4.0) * 1e3, 0.34469333, 1e-7));
}

TEST_CASE("unit discipline: J outputs match an eV-native route to 12 digits") {
    // Zeeman energy, eV-native: g * (mu_B in eV/T) * B
    const double g = 2.0, b = 1.0;
    const double ev_native = g * (9.2740100783e-24 / 1.602176634e-19) * b;
    const double from_si = joules_to_ev(g * constants::bohr_magneton * b);
    CHECK(close_rel(from_si, ev_native, 1e-12));

    // Coulomb energy, eV-native: e/2C (charge cancels one power)
    const double c_f = 1e-18;
    const double ev_native2 = 1.602176634e-19 / (2.0 * c_f);
    CHECK(close_rel(joules_to_ev(coulomb_blockade_energy(c_f)), ev_native2, 1e-12));
}
