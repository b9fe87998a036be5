#include "spindot/constants.hpp"

namespace spindot {

double thermal_timescale(double temperature_kelvin) {
    if (temperature_kelvin <= 0.0) {
        throw DomainError("thermal_timescale: temperature must be > 0 K");
    }
    return constants::hbar / (constants::boltzmann * temperature_kelvin);
}

double coulomb_blockade_energy(double capacitance_farad) {
    if (capacitance_farad <= 0.0) {
        throw DomainError("coulomb_blockade_energy: capacitance must be > 0 F");
    }
    const double e = constants::electron_charge;
    return e * e / (2.0 * capacitance_farad);
}

bool single_occupancy_ok(double capacitance_farad, double temperature_kelvin) {
    return coulomb_blockade_energy(capacitance_farad) >
           constants::boltzmann * temperature_kelvin;
}

}  // namespace spindot
