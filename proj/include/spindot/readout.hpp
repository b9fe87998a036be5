#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "spindot/dynamics.hpp"

namespace spindot {

// Spin-valve analyzer: a ferromagnetic contact of polarization P reading the
// dot through its magnetization axis. The polarizer/analyzer current form
// I = I_max (1 + P cos(theta)) / 2 is the standard tunneling-
// magnetoresistance model; transport through the dot is assumed not to rotate
// the spin.
struct AnalyzerConfig {
    double polarization = 0.34;  // contact spin polarization (Co ~ 0.34)
    std::array<double, 3> magnetization_axis{0.0, 0.0, 1.0};  // unit vector
    double i_max = 1e-9;            // A
    double read_voltage = 1.0;      // V
    double capacitance = 1e-18;     // F
    double injector_polarization = 1.0;  // optional second polarization factor

    void validate() const;
};

struct ReadoutResult {
    double current = 0.0;  // A
    bool blocked = false;  // read voltage did not overcome the Coulomb blockade
};

// Bloch vector (<sx>, <sy>, <sz>) of a two-level state; |up> is +z.
std::array<double, 3> bloch_vector(const SpinState& state);

// I_max (1 + P <sigma>.m) / 2 when the read voltage exceeds the blockade
// threshold e/2C; otherwise 0 A with the blocked flag set.
ReadoutResult readout_current(const SpinState& state, const AnalyzerConfig& a);

struct MeasurementOutcome {
    int bit = 0;  // 0 = spin along +axis, 1 = along -axis
    SpinState collapsed;
};

// Projective single-shot measurement along `axis` with Born probabilities;
// deterministic given the seed.
MeasurementOutcome sample_measurement(const SpinState& state, const std::array<double, 3>& axis,
                                      std::uint64_t seed);

// Stateful sampler for repeated shots from one seeded stream.
class MeasurementSampler {
  public:
    explicit MeasurementSampler(std::uint64_t seed) : rng_(seed) {}
    MeasurementOutcome sample(const SpinState& state, const std::array<double, 3>& axis);

  private:
    std::mt19937_64 rng_;
};

}  // namespace spindot
