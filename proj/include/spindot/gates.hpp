#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spindot/dot_model.hpp"
#include "spindot/dynamics.hpp"

namespace spindot {

enum class ControlState { up, down };

enum class GateKind { rotate, crot };

struct GateSpec {
    GateKind kind = GateKind::rotate;
    double angle = constants::pi;      // rad, in (0, 2pi]
    double axis_phase = 0.0;           // rad, rotate only
    ControlState control_state = ControlState::up;  // crot only
    int target_site = 0;

    void validate() const;
};

struct GateResult {
    SpinState final_state;
    PulseSchedule schedule_used;
    double fidelity = 0.0;             // [0, 1]
    double conditional_leakage = 0.0;  // [0, 1]; 0 for single-qubit gates
    std::vector<std::string> warnings;
};

// Timed-resonance rotation of one spin: a single drive segment of duration
// angle / Omega at the splitting frequency (or f.omega when nonzero).
// Fidelity is |<ideal|final>|^2 against the resonant rotating-wave rotation
// carried back to the lab frame.
GateResult rotate_single(const SpinState& state, double angle, const DotParameters& p,
                         const FieldConfig& f, const SplittingMode& mode);

// Conditional rotation of the target (site 1) on an exchange-coupled pair.
// The drive frequency comes from exact 4x4 eigenvalue differences of the
// control-conditioned target transition (drive.omega == 0 requests this; a
// nonzero drive.omega overrides). conditional_leakage is measured
// operationally: the opposite-control branch is run and the largest target
// flip probability seen along the way is reported.
GateResult crot(const SpinState& state, double angle, ControlState control_state,
                std::pair<double, double> deltas, const ExchangeModel& ex,
                const DriveTerm& drive);

// |trace(ideal^dag actual)|^2 / d^2; invariant under global phase.
double gate_fidelity(const Matrix& actual, const Matrix& ideal);

// Register preparation from the known all-up injected state: pi-pulse
// segments only for the sites requested down. The returned state is the
// simulated result (exact per-site evolution; the sites are uncoupled here).
std::pair<SpinState, PulseSchedule> prepare_register(const std::vector<ControlState>& orientations,
                                                     const DotParameters& p, const FieldConfig& f,
                                                     const SplittingMode& mode);

}  // namespace spindot
