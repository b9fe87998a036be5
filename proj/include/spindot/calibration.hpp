#pragma once

#include <vector>

#include "spindot/dot_model.hpp"
#include "spindot/dynamics.hpp"

namespace spindot {

// How a "did the spin flip" measurement is realized.
//
//  crossing : the monotone-splitting shortcut — a sweep over [a, b] flips the
//             spin iff Delta(b) >= hbar omega. Exact and cheap; the default.
//  dynamics : the measure-after-sweep protocol run for real — the gate
//             voltage is chirped linearly across the range while the AC drive
//             is on, the lab-frame state is integrated, and the final P(down)
//             is thresholded. The adiabatic-passage linewidth limits how
//             narrow a bracket this test can resolve: distinguishing
//             voltages a apart needs a burst of duration ~ hbar /
//             (dDelta/dV * a), so runtime grows as 1/a. Callers pick a
//             tolerance the burst budget can support.
enum class FlipTest { crossing, dynamics };

// Knobs for the dynamics-mode burst. Defaults keep every decision sharply
// resolvable: the Rabi rate sits well inside the swept detuning span and the
// chirp is strongly adiabatic (Landau-Zener exponent ~ adiabatic_margin/4).
struct BurstPolicy {
    double linewidth_factor = 5.0;    // Rabi rate = swept span / this
    double adiabatic_margin = 36.0;   // burst duration T = margin * span / Omega^2
    double omega_cap_fraction = 0.1;  // Rabi rate also capped at this * omega
    int steps_per_cycle = 64;         // integrator steps per drive period
    double flip_threshold = 0.5;      // P(down) >= threshold counts as flipped
};

struct CalibrationIteration {
    double v_low = 0.0;   // swept range
    double v_high = 0.0;
    bool flipped = false;
};

struct CalibrationLog {
    std::vector<CalibrationIteration> iterations;
    int expand_steps = 0;   // sweeps spent in the range-doubling phase
    double final_v = 0.0;   // within the last bracket
    double residual = 0.0;  // |Delta(final_v) - hbar omega|, J
};

// Range-doubling then bisection search for the gate voltage that brings the
// splitting into resonance with omega. Requires Delta(0) < hbar omega <=
// Delta(v_max) and monotone Delta (guaranteed by the splitting model).
CalibrationLog find_resonance_voltage(const DotParameters& p, const FieldConfig& f,
                                      const SplittingMode& mode, double omega, double v_max,
                                      double tol, FlipTest flip_test = FlipTest::crossing,
                                      const BurstPolicy& policy = {});

// Resonant pi-pulse duration pi hbar / ((|g|/2) mu_B B_ac) from the documented
// drive convention. In strict mode the value is verified at call time against
// one lab-frame evolve run (P(down) >= 0.999).
double calibrate_pi_duration(const DotParameters& p, const FieldConfig& f, bool strict = false);

}  // namespace spindot
