#pragma once

#include "spindot/errors.hpp"

namespace spindot {

// CODATA 2018 values. Everything internal is SI (J, s, m, T); electronvolt
// conversions happen only at I/O boundaries.
namespace constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double planck_h = 6.62607015e-34;         // J s (exact)
inline constexpr double hbar = planck_h / (2.0 * pi);      // J s
inline constexpr double electron_charge = 1.602176634e-19; // C (exact)
inline constexpr double free_electron_mass = 9.1093837015e-31; // kg
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
inline constexpr double boltzmann = 1.380649e-23;          // J/K (exact)
inline constexpr double speed_of_light = 299792458.0;      // m/s (exact)

inline constexpr double joule_per_ev = electron_charge;    // J/eV
inline constexpr double hbar_evs = hbar / joule_per_ev;    // eV s
inline constexpr double bohr_magneton_ev = bohr_magneton / joule_per_ev; // eV/T

}  // namespace constants

inline double joules_to_ev(double e_joule) { return e_joule / constants::joule_per_ev; }
inline double ev_to_joules(double e_ev) { return e_ev * constants::joule_per_ev; }

// hbar/(k T): the thermal time scale a computation should not significantly exceed.
double thermal_timescale(double temperature_kelvin);

// Charging energy e^2/(2C) of a dot with capacitance C.
double coulomb_blockade_energy(double capacitance_farad);

// Single-occupancy condition: e^2/2C must exceed kT.
bool single_occupancy_ok(double capacitance_farad, double temperature_kelvin);

}  // namespace spindot
