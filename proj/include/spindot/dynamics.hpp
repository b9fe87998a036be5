#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "spindot/constants.hpp"
#include "spindot/hamiltonian.hpp"

namespace spindot {

// Normalized complex state vector of dimension 2, 4, ..., 1024.
class SpinState {
  public:
    explicit SpinState(Vector amplitudes);

    static SpinState up();    // |0> = |up>
    static SpinState down();  // |1> = |down>
    static SpinState basis_state(int dim, int index);

    int dim() const { return static_cast<int>(amp_.size()); }
    const Vector& amplitudes() const { return amp_; }
    double probability(int basis_index) const;
    std::vector<double> probabilities() const;

    // Kronecker product, left factor first.
    SpinState tensor(const SpinState& other) const;

  private:
    Vector amp_;
};

enum class DriveAxis { x, y };

// Oscillatory drive amplitude_energy * cos(omega t + phase) * sigma_axis on
// one site. amplitude_energy = (|g|/2) mu_B B_ac under the documented drive
// convention (see drive_amplitude_energy), and the lab-frame Rabi rate is
// amplitude_energy / hbar; a resonant pi pulse takes pi hbar /
// amplitude_energy. That factor is the classic bookkeeping trap, so it is
// pinned numerically by the acceptance suite rather than trusted from prose.
struct DriveTerm {
    double amplitude_energy = 0.0;  // J
    double omega = 0.0;             // rad/s
    double phase = 0.0;             // rad
    int target_site = 0;
    DriveAxis axis = DriveAxis::x;

    void validate(int n_sites) const;
};

double drive_amplitude_energy(double g_factor, double b_ac);

// RWA Rabi rate Omega = amplitude_energy / hbar (rad/s).
double rabi_rate(double amplitude_energy);
// Resonant pi-pulse duration pi / Omega.
double pi_time(double amplitude_energy);

struct SegmentSpec {
    double duration = 0.0;  // s
    std::shared_ptr<const HermitianMatrix> hamiltonian;
    std::optional<DriveTerm> drive;
};

struct PulseSchedule {
    std::vector<SegmentSpec> segments;
    double dt_max = 0.0;  // integrator step cap, s

    void validate() const;
};

struct EvolveStats {
    long steps = 0;
    double max_norm_drift = 0.0;  // before renormalization
};

// Piecewise-constant midpoint-sampled propagation: U = prod_k exp(-i H_k dt /
// hbar) with H_k = H + drive(t_mid,k), each step exponential computed exactly
// via eigendecomposition (closed form for dim 2). The drive oscillates in
// absolute time: its argument is omega * (t0 + local t) + phase, so
// multi-segment schedules stay phase coherent.
SpinState evolve(const SpinState& state, const HermitianMatrix& h,
                 const std::optional<DriveTerm>& drive, double t, double dt_max,
                 double t0 = 0.0, EvolveStats* stats = nullptr);

// Rabi formula P(t) = Omega^2/(Omega^2+delta^2) sin^2(sqrt(Omega^2+delta^2)
// t/2) with Omega = amplitude_energy/hbar and detuning delta = (splitting -
// hbar omega)/hbar. This is the rotating-wave oracle; the lab-frame engine
// above never uses it.
double rwa_flip_probability(double splitting, const DriveTerm& drive, double t);

struct ScheduleTrace {
    // Basis-state probabilities after each segment.
    std::vector<std::vector<double>> segment_probabilities;
    EvolveStats stats;
};

std::pair<SpinState, ScheduleTrace> run_schedule(const SpinState& state,
                                                 const PulseSchedule& sched);

namespace detail {

// One exact step of a two-level system H = [[h00, h01], [conj(h01), h11]] (J).
// Applies exp(-i H dt / hbar) in place.
void su2_step(Complex& a0, Complex& a1, double h00, double h11, Complex h01, double dt);

}  // namespace detail

}  // namespace spindot
