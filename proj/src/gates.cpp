#include "spindot/gates.hpp"

#include <cmath>

namespace spindot {

using constants::hbar;
using constants::pi;

void GateSpec::validate() const {
    if (!(angle > 0.0) || angle > 2.0 * pi) {
        throw DomainError("GateSpec: angle must be in (0, 2pi]");
    }
    if (target_site < 0) throw DomainError("GateSpec: target_site must be >= 0");
}

namespace {

// Ideal resonant RWA rotation by theta for drive phase phi, in the 2-dim
// {lower, upper} subspace, including the free lab-frame phases:
//   a_lower = e^{-i E0 t/hbar} cos(theta/2) a0 - i e^{-i E0 t/hbar} e^{+i phi} sin(theta/2) a1
//   a_upper = -i e^{-i E1 t/hbar} e^{-i phi} sin(theta/2) a0 + e^{-i E1 t/hbar} cos(theta/2) a1
void ideal_rotation(Complex& lower, Complex& upper, double theta, double phi, double e_lower,
                    double e_upper, double t) {
    const Complex ph0(std::cos(e_lower * t / hbar), -std::sin(e_lower * t / hbar));
    const Complex ph1(std::cos(e_upper * t / hbar), -std::sin(e_upper * t / hbar));
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex mi(0.0, -1.0);
    const Complex eip(std::cos(phi), std::sin(phi));
    const Complex eim(std::cos(phi), -std::sin(phi));
    const Complex l = c * lower + mi * eip * s * upper;
    const Complex u = mi * eim * s * lower + c * upper;
    lower = ph0 * l;
    upper = ph1 * u;
}

}  // namespace

GateResult rotate_single(const SpinState& state, double angle, const DotParameters& p,
                         const FieldConfig& f, const SplittingMode& mode) {
    if (state.dim() != 2) throw DomainError("rotate_single: state must have dim 2");
    if (!(angle > 0.0)) throw DomainError("rotate_single: angle must be > 0");
    const SplittingBreakdown split = total_splitting(p, f, mode);
    const double delta = split.total;

    DriveTerm drive;
    drive.amplitude_energy = drive_amplitude_energy(p.g_factor, f.b_ac);
    drive.omega = f.omega > 0.0 ? f.omega : delta / hbar;
    drive.phase = f.phase;
    drive.target_site = 0;
    drive.axis = DriveAxis::x;
    if (!(drive.amplitude_energy > 0.0)) {
        throw DomainError("rotate_single: b_ac must be > 0 to drive a rotation");
    }

    const double t = angle / rabi_rate(drive.amplitude_energy);

    PulseSchedule sched;
    // step cap: 200 steps per period of the fastest frequency present
    const double fastest = std::max(drive.omega, delta / hbar);
    sched.dt_max = 2.0 * pi / fastest / 200.0;
    sched.segments.push_back(
        {t, std::make_shared<const HermitianMatrix>(build_single(delta)), drive});

    auto [final_state, trace] = run_schedule(state, sched);

    Complex lower = state.amplitudes()(0);
    Complex upper = state.amplitudes()(1);
    ideal_rotation(lower, upper, angle, drive.phase, -delta / 2.0, +delta / 2.0, t);
    const Complex ov = std::conj(lower) * final_state.amplitudes()(0) +
                       std::conj(upper) * final_state.amplitudes()(1);
    GateResult res{final_state, sched, std::norm(ov), 0.0, {}};
    return res;
}

namespace {

// Index of the eigenvector with the largest overlap on basis state b.
int dominant_eigenindex(const EigenSolution& sol, int b) {
    int best = 0;
    double best_w = -1.0;
    for (int k = 0; k < sol.vectors.cols(); ++k) {
        const double w = std::norm(sol.vectors(b, k));
        if (w > best_w) {
            best_w = w;
            best = k;
        }
    }
    return best;
}

double target_flip_probability(const SpinState& s) {
    // basis |uu>,|ud>,|du>,|dd>: target down at indices 1, 3
    return s.probability(1) + s.probability(3);
}

}  // namespace

GateResult crot(const SpinState& state, double angle, ControlState control_state,
                std::pair<double, double> deltas, const ExchangeModel& ex,
                const DriveTerm& drive_in) {
    if (state.dim() != 4) throw DomainError("crot: state must have dim 4");
    if (!(angle > 0.0)) throw DomainError("crot: angle must be > 0");
    if (!(drive_in.amplitude_energy > 0.0)) {
        throw DomainError("crot: drive amplitude_energy must be > 0");
    }
    const auto [delta_c, delta_t] = deltas;
    std::vector<std::string> warnings;
    if (std::abs(delta_c - delta_t) < 10.0 * std::abs(ex.j)) {
        warnings.push_back(
            "crot: |Delta_C - Delta_T| < 10|J|; conditionality may be degraded "
            "(flip-flop terms near resonance in heisenberg exchange)");
    }

    const HermitianMatrix h = build_pair(delta_c, delta_t, ex);
    const EigenSolution sol = eigensolve(h);

    const int c = control_state == ControlState::up ? 0 : 1;
    const int b_lo = c << 1;        // |c, up>
    const int b_hi = (c << 1) | 1;  // |c, down>
    const int k_lo = dominant_eigenindex(sol, b_lo);
    const int k_hi = dominant_eigenindex(sol, b_hi);
    if (k_lo == k_hi) {
        warnings.push_back("crot: dressed-state identification ambiguous (degenerate mixing)");
    }
    const double e_lo = sol.values(k_lo);
    const double e_hi = sol.values(k_hi);

    DriveTerm drive = drive_in;
    drive.target_site = 1;
    if (drive.omega <= 0.0) drive.omega = (e_hi - e_lo) / hbar;

    // Dressed transition matrix element of the drive operator; 1 exactly for
    // ising, slightly below 1 for heisenberg outside the degenerate regime.
    const Matrix sx_t = embed_site_operator(pauli::x(), 1, 2);
    const Complex mu = (sol.vectors.col(k_hi).adjoint() * sx_t * sol.vectors.col(k_lo))(0, 0);
    const double mu_mag = std::abs(mu);
    if (mu_mag < 1e-6) {
        throw DomainError("crot: drive does not couple the selected transition");
    }
    const double t = angle / (rabi_rate(drive.amplitude_energy) * mu_mag);

    PulseSchedule sched;
    const double fastest = std::max(drive.omega, (sol.values(3) - sol.values(0)) / hbar);
    sched.dt_max = 2.0 * pi / fastest / 200.0;
    sched.segments.push_back({t, std::make_shared<const HermitianMatrix>(h), drive});

    auto [final_state, trace] = run_schedule(state, sched);

    // Ideal conditional rotation: RWA rotation inside the selected dressed
    // pair, free phases everywhere else.
    Vector dressed = sol.vectors.adjoint() * state.amplitudes();
    Complex lower = dressed(k_lo);
    Complex upper = dressed(k_hi);
    // Effective axis phase is phi - arg(mu); this also absorbs the arbitrary
    // eigenvector sign returned by the solver.
    ideal_rotation(lower, upper, angle, drive.phase - std::arg(mu), e_lo, e_hi, t);
    Vector ideal = dressed;
    for (int k = 0; k < 4; ++k) {
        if (k == k_lo || k == k_hi) continue;
        const double ph = sol.values(k) * t / hbar;
        ideal(k) *= Complex(std::cos(ph), -std::sin(ph));
    }
    ideal(k_lo) = lower;
    ideal(k_hi) = upper;
    Vector ideal_lab = sol.vectors * ideal;
    const Complex overlap = (ideal_lab.adjoint() * final_state.amplitudes())(0, 0);
    const double fidelity = std::norm(overlap);

    // Opposite branch: same drive, control flipped, target up; record the
    // largest target-flip probability seen over the pulse.
    const int cbar = 1 - c;
    SpinState leak_in = SpinState::basis_state(4, cbar << 1);
    const int samples = 200;
    double leakage = 0.0;
    {
        SpinState cur = leak_in;
        const double dt_seg = t / samples;
        double t_abs = 0.0;
        for (int i = 0; i < samples; ++i) {
            cur = evolve(cur, h, drive, dt_seg, sched.dt_max, t_abs);
            t_abs += dt_seg;
            leakage = std::max(leakage, target_flip_probability(cur));
        }
    }

    GateResult res{final_state, sched, fidelity, leakage, warnings};
    return res;
}

double gate_fidelity(const Matrix& actual, const Matrix& ideal) {
    if (actual.rows() != ideal.rows() || actual.cols() != ideal.cols() ||
        actual.rows() != actual.cols()) {
        throw DomainError("gate_fidelity: dimension mismatch");
    }
    const double d = static_cast<double>(actual.rows());
    const Complex tr = (ideal.adjoint() * actual).trace();
    return std::norm(tr) / (d * d);
}

std::pair<SpinState, PulseSchedule> prepare_register(const std::vector<ControlState>& orientations,
                                                     const DotParameters& p, const FieldConfig& f,
                                                     const SplittingMode& mode) {
    const int n = static_cast<int>(orientations.size());
    if (n < 1 || n > 10) throw CapacityError("prepare_register: 1..10 sites supported");
    const double delta = total_splitting(p, f, mode).total;

    DriveTerm proto;
    proto.amplitude_energy = drive_amplitude_energy(p.g_factor, f.b_ac);
    proto.omega = f.omega > 0.0 ? f.omega : delta / hbar;
    proto.phase = f.phase;
    proto.axis = DriveAxis::x;

    PulseSchedule sched;
    std::vector<double> t_starts(static_cast<size_t>(n), 0.0);
    double t_total = 0.0;
    std::shared_ptr<const HermitianMatrix> h_reg;
    const double t_pi =
        proto.amplitude_energy > 0.0 ? pi_time(proto.amplitude_energy) : 0.0;
    for (int s = 0; s < n; ++s) {
        if (orientations[static_cast<size_t>(s)] == ControlState::down) {
            if (!(proto.amplitude_energy > 0.0)) {
                throw DomainError("prepare_register: b_ac must be > 0 to flip spins");
            }
            if (!h_reg) {
                h_reg = std::make_shared<const HermitianMatrix>(
                    build_chain(std::vector<double>(static_cast<size_t>(n), delta), {}));
            }
            DriveTerm d = proto;
            d.target_site = s;
            t_starts[static_cast<size_t>(s)] = t_total;
            sched.segments.push_back({t_pi, h_reg, d});
            t_total += t_pi;
        }
    }
    sched.dt_max =
        proto.omega > 0.0 ? 2.0 * pi / std::max(proto.omega, delta / hbar) / 200.0 : 1.0;

    // The sites are uncoupled, so the register factorizes exactly: evolve each
    // site's two-level factor through its own timeline and tensor the results.
    const HermitianMatrix h1 = build_single(delta);
    SpinState reg = SpinState::up();
    bool first = true;
    for (int s = 0; s < n; ++s) {
        SpinState site = SpinState::up();
        if (orientations[static_cast<size_t>(s)] == ControlState::down) {
            DriveTerm d = proto;
            d.target_site = 0;
            site = evolve(site, h1, d, t_pi, sched.dt_max, t_starts[static_cast<size_t>(s)]);
            const double t_rest = t_total - (t_starts[static_cast<size_t>(s)] + t_pi);
            if (t_rest > 0.0) site = evolve(site, h1, std::nullopt, t_rest, t_rest);
        } else if (t_total > 0.0) {
            site = evolve(site, h1, std::nullopt, t_total, t_total);
        }
        reg = first ? site : reg.tensor(site);
        first = false;
    }
    return {reg, sched};
}

}  // namespace spindot
