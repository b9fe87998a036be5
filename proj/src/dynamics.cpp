#include "spindot/dynamics.hpp"

#include <cmath>

namespace spindot {

using constants::hbar;
using constants::pi;

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr long kMaxSteps = 1'000'000'000L;
constexpr double kNormTol = 1e-10;

}  // namespace

SpinState::SpinState(Vector amplitudes) : amp_(std::move(amplitudes)) {
    const int d = static_cast<int>(amp_.size());
    if (d < 2 || d > 1024 || !is_power_of_two(d)) {
        throw DomainError("SpinState: dimension must be a power of two in [2, 1024]");
    }
    const double n = amp_.norm();
    if (std::abs(n - 1.0) > kNormTol) {
        throw DomainError("SpinState: amplitudes must be normalized within 1e-10");
    }
    amp_ /= n;
}

SpinState SpinState::up() { return basis_state(2, 0); }
SpinState SpinState::down() { return basis_state(2, 1); }

SpinState SpinState::basis_state(int dim, int index) {
    if (index < 0 || index >= dim) throw DomainError("SpinState: basis index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return SpinState(std::move(v));
}

double SpinState::probability(int basis_index) const {
    if (basis_index < 0 || basis_index >= dim()) {
        throw DomainError("SpinState: basis index out of range");
    }
    return std::norm(amp_(basis_index));
}

std::vector<double> SpinState::probabilities() const {
    std::vector<double> p(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i) p[static_cast<size_t>(i)] = std::norm(amp_(i));
    return p;
}

SpinState SpinState::tensor(const SpinState& other) const {
    Vector v(static_cast<long>(dim()) * other.dim());
    for (int i = 0; i < dim(); ++i) {
        for (int j = 0; j < other.dim(); ++j) {
            v(static_cast<long>(i) * other.dim() + j) = amp_(i) * other.amp_(j);
        }
    }
    return SpinState(std::move(v));
}

void DriveTerm::validate(int n_sites) const {
    if (amplitude_energy < 0.0) throw DomainError("DriveTerm: amplitude_energy must be >= 0");
    if (omega < 0.0) throw DomainError("DriveTerm: omega must be >= 0");
    if (target_site < 0 || target_site >= n_sites) {
        throw DomainError("DriveTerm: target_site out of range");
    }
}

double drive_amplitude_energy(double g_factor, double b_ac) {
    if (b_ac < 0.0) throw DomainError("drive_amplitude_energy: b_ac must be >= 0");
    return std::abs(g_factor) / 2.0 * constants::bohr_magneton * b_ac;
}

double rabi_rate(double amplitude_energy) { return amplitude_energy / hbar; }

double pi_time(double amplitude_energy) {
    if (!(amplitude_energy > 0.0)) throw DomainError("pi_time: amplitude_energy must be > 0");
    return pi / rabi_rate(amplitude_energy);
}

void PulseSchedule::validate() const {
    if (!(dt_max > 0.0)) throw DomainError("PulseSchedule: dt_max must be > 0");
    for (const auto& seg : segments) {
        if (!(seg.duration > 0.0)) throw DomainError("PulseSchedule: durations must be > 0");
        if (!seg.hamiltonian) throw DomainError("PulseSchedule: segment lacks a Hamiltonian");
    }
}

namespace detail {

void su2_step(Complex& a0, Complex& a1, double h00, double h11, Complex h01, double dt) {
    // H = a I + b . sigma with bx = Re h01, by = -Im h01, bz = (h00 - h11)/2
    const double a = 0.5 * (h00 + h11);
    const double bx = h01.real();
    const double by = -h01.imag();
    const double bz = 0.5 * (h00 - h11);
    const double bmag = std::sqrt(bx * bx + by * by + bz * bz);
    const double phase = a * dt / hbar;
    const Complex global(std::cos(phase), -std::sin(phase));
    if (bmag == 0.0) {
        a0 *= global;
        a1 *= global;
        return;
    }
    const double theta = bmag * dt / hbar;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double nx = bx / bmag, ny = by / bmag, nz = bz / bmag;
    // U = global * (c I - i s n.sigma)
    const Complex u00(c, -s * nz);
    const Complex u11(c, s * nz);
    const Complex u01 = Complex(0, -s) * Complex(nx, -ny);
    const Complex u10 = Complex(0, -s) * Complex(nx, ny);
    const Complex b0 = u00 * a0 + u01 * a1;
    const Complex b1 = u10 * a0 + u11 * a1;
    a0 = global * b0;
    a1 = global * b1;
}

}  // namespace detail

SpinState evolve(const SpinState& state, const HermitianMatrix& h,
                 const std::optional<DriveTerm>& drive, double t, double dt_max, double t0,
                 EvolveStats* stats) {
    if (state.dim() != h.dim()) throw DomainError("evolve: state/Hamiltonian dimension mismatch");
    if (t < 0.0) throw DomainError("evolve: t must be >= 0");
    if (!(dt_max > 0.0)) throw DomainError("evolve: dt_max must be > 0");
    const int n_sites = static_cast<int>(std::lround(std::log2(state.dim())));
    if (drive) drive->validate(n_sites);

    EvolveStats local;
    Vector psi = state.amplitudes();
    if (t > 0.0) {
        const double steps_needed = std::ceil(t / dt_max);
        if (steps_needed > static_cast<double>(kMaxSteps)) {
            throw CapacityError("evolve: step count exceeds 1e9");
        }
        const long steps = static_cast<long>(steps_needed);
        const double dt = t / static_cast<double>(steps);
        local.steps = steps;

        if (state.dim() == 2) {
            const Matrix& m = h.matrix();
            const double h00 = m(0, 0).real();
            const double h11 = m(1, 1).real();
            const Complex h01 = m(0, 1);
            Complex a0 = psi(0), a1 = psi(1);
            for (long k = 0; k < steps; ++k) {
                const double tm = t0 + (static_cast<double>(k) + 0.5) * dt;
                Complex hk01 = h01;
                if (drive && drive->amplitude_energy != 0.0) {
                    const double c = drive->amplitude_energy *
                                     std::cos(drive->omega * tm + drive->phase);
                    if (drive->axis == DriveAxis::x) {
                        hk01 += c;
                    } else {
                        hk01 += Complex(0.0, -c);
                    }
                }
                detail::su2_step(a0, a1, h00, h11, hk01, dt);
            }
            psi(0) = a0;
            psi(1) = a1;
        } else {
            Matrix drive_op;
            if (drive && drive->amplitude_energy != 0.0) {
                const Matrix& axis_op = drive->axis == DriveAxis::x ? pauli::x() : pauli::y();
                drive_op = embed_site_operator(axis_op, drive->target_site, n_sites);
            }
            Matrix hk(h.dim(), h.dim());
            Eigen::SelfAdjointEigenSolver<Matrix> solver;
            for (long k = 0; k < steps; ++k) {
                const double tm = t0 + (static_cast<double>(k) + 0.5) * dt;
                hk = h.matrix();
                if (drive_op.size() > 0) {
                    hk += (drive->amplitude_energy *
                           std::cos(drive->omega * tm + drive->phase)) *
                          drive_op;
                }
                solver.compute(hk);
                if (solver.info() != Eigen::Success) {
                    throw NumericalError("evolve: step eigendecomposition failed");
                }
                Vector coeffs = solver.eigenvectors().adjoint() * psi;
                for (long i = 0; i < coeffs.size(); ++i) {
                    const double ph = solver.eigenvalues()(i) * dt / hbar;
                    coeffs(i) *= Complex(std::cos(ph), -std::sin(ph));
                }
                psi = solver.eigenvectors() * coeffs;
            }
        }
    }

    const double n = psi.norm();
    const double drift = std::abs(n - 1.0);
    local.max_norm_drift = drift;
    if (drift > kNormTol) {
        throw NumericalError("evolve: norm drift " + std::to_string(drift) +
                             " exceeds 1e-10; refusing to renormalize silently");
    }
    psi /= n;  // logged drift only; within tolerance
    if (stats) {
        stats->steps += local.steps;
        stats->max_norm_drift = std::max(stats->max_norm_drift, local.max_norm_drift);
    }
    return SpinState(std::move(psi));
}

double rwa_flip_probability(double splitting, const DriveTerm& drive, double t) {
    const double omega_rabi = rabi_rate(drive.amplitude_energy);
    const double detuning = (splitting - hbar * drive.omega) / hbar;
    const double gen = std::sqrt(omega_rabi * omega_rabi + detuning * detuning);
    if (gen == 0.0) return 0.0;
    const double s = std::sin(gen * t / 2.0);
    return (omega_rabi * omega_rabi) / (gen * gen) * s * s;
}

std::pair<SpinState, ScheduleTrace> run_schedule(const SpinState& state,
                                                 const PulseSchedule& sched) {
    sched.validate();
    ScheduleTrace trace;
    SpinState current = state;
    double t_abs = 0.0;
    for (const auto& seg : sched.segments) {
        current = evolve(current, *seg.hamiltonian, seg.drive, seg.duration, sched.dt_max, t_abs,
                         &trace.stats);
        t_abs += seg.duration;
        trace.segment_probabilities.push_back(current.probabilities());
    }
    return {std::move(current), std::move(trace)};
}

}  // namespace spindot
