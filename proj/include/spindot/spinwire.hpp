#pragma once

#include <optional>
#include <vector>

#include "spindot/dynamics.hpp"

namespace spindot {

// Sequentially clocked exchange pulses along a chain: one bond on at a time.
struct ClockPulse {
    int bond = 0;         // couples sites (bond, bond+1)
    double j = 0.0;       // exchange energy, J
    double duration = 0.0;  // s
};

struct ClockSchedule {
    std::vector<ClockPulse> pulses;

    void validate(int n_sites) const;
};

// Bond k pulsed for t_swap = pi hbar / (4 J) in order k = 0..N-2; an exchange
// pulse of action 2 J t / hbar = pi/2 implements SWAP up to phase in the
// sigma.sigma convention (verified numerically against the 4x4 propagator).
ClockSchedule canonical_swap_schedule(int n_sites, double j);

double swap_pulse_duration(double j);

struct GroundStateResult {
    SpinState state;
    double end_correlation = 0.0;  // <sz_0 sz_{N-1}>
    double energy = 0.0;           // J
};

// Ground state of the heisenberg chain (J > 0, antiferromagnetic) and the
// end-to-end sz correlation; odd chains correlate, even chains anticorrelate.
GroundStateResult chain_ground_state(int n_sites, double j, const std::vector<double>& deltas);

struct TransferStep {
    int bond = 0;
    std::vector<double> site_down_probability;  // after the pulse
    double total_sz = 0.0;                      // sum of <sz_k> after the pulse
};

struct TransferResult {
    double fidelity = 0.0;  // overlap of site N-1's reduced state with the input
    std::vector<TransferStep> trace;
    SpinState final_state;
};

// Initializes site 0 to `input` and the rest to |up>, applies the pulses via
// the dynamics engine, and scores the reduced state of the last site against
// the input. On-site deltas during pulses default to zero (set
// deltas_during_transfer for robustness studies).
TransferResult clocked_transfer(const SpinState& input, int n_sites, double j,
                                const std::optional<ClockSchedule>& sched = std::nullopt,
                                const std::vector<double>& deltas_during_transfer = {});

// <input| rho_site |input> for the reduced state of one site.
double site_overlap_fidelity(const SpinState& register_state, int site, const SpinState& input);

// Per-site down probabilities and total <sz> of a register state.
std::vector<double> site_down_probabilities(const SpinState& register_state);
double total_sz(const SpinState& register_state);

}  // namespace spindot
