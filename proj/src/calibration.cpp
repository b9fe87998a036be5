#include "spindot/calibration.hpp"

#include <cmath>

namespace spindot {

using constants::hbar;
using constants::pi;

namespace {

constexpr int kExpandStartExponent = 6;  // first range = v_max / 2^6
constexpr long kMaxBurstSteps = 1'000'000'000L;

// Lab-frame sweep burst: chirp the voltage linearly across [a, b] with the
// drive on, then threshold P(down).
bool sweep_burst_flips(const SplittingResponse& resp, double a, double b, double omega,
                       const BurstPolicy& policy) {
    const double delta_a = resp.total_at_voltage(a);
    const double delta_b = resp.total_at_voltage(b);
    if (delta_b < delta_a) {
        throw NumericalError("calibration: splitting is not monotone over the swept range");
    }
    const double span = (delta_b - delta_a) / hbar;  // rad/s
    if (!(span > 0.0)) {
        throw CalibrationError("calibration: splitting does not respond to voltage");
    }
    const double omega_rabi =
        std::min(span / policy.linewidth_factor, policy.omega_cap_fraction * omega);
    const double amp = hbar * omega_rabi;
    const double duration = policy.adiabatic_margin * span / (omega_rabi * omega_rabi);
    const double dt = (2.0 * pi / omega) / static_cast<double>(policy.steps_per_cycle);
    const double steps_needed = std::ceil(duration / dt);
    if (steps_needed > static_cast<double>(kMaxBurstSteps)) {
        throw CapacityError("calibration: burst step count exceeds 1e9");
    }
    const long steps = static_cast<long>(steps_needed);
    const double dt_eff = duration / static_cast<double>(steps);

    Complex a0(1.0, 0.0), a1(0.0, 0.0);
    for (long k = 0; k < steps; ++k) {
        const double tm = (static_cast<double>(k) + 0.5) * dt_eff;
        const double v = a + (b - a) * tm / duration;
        const double half = resp.total_at_voltage(v) / 2.0;
        const Complex h01(amp * std::cos(omega * tm), 0.0);
        detail::su2_step(a0, a1, -half, +half, h01, dt_eff);
    }
    return std::norm(a1) >= policy.flip_threshold;
}

}  // namespace

CalibrationLog find_resonance_voltage(const DotParameters& p, const FieldConfig& f,
                                      const SplittingMode& mode, double omega, double v_max,
                                      double tol, FlipTest flip_test, const BurstPolicy& policy) {
    if (!(omega > 0.0)) throw DomainError("find_resonance_voltage: omega must be > 0");
    if (!(v_max > 0.0)) throw DomainError("find_resonance_voltage: v_max must be > 0");
    if (!(tol > 0.0)) throw DomainError("find_resonance_voltage: tol must be > 0");

    const SplittingResponse resp = make_splitting_response(p, f, mode);
    const double target = hbar * omega;
    if (!(resp.total_at_voltage(0.0) < target)) {
        throw CalibrationError("find_resonance_voltage: Delta(0) already >= hbar omega");
    }
    if (resp.total_at_voltage(v_max) < target) {
        throw CalibrationError("find_resonance_voltage: resonance not bracketed by v_max");
    }

    const auto flips = [&](double a, double b) -> bool {
        if (flip_test == FlipTest::crossing) {
            if (resp.total_at_voltage(b) < resp.total_at_voltage(a)) {
                throw NumericalError("calibration: splitting is not monotone over the range");
            }
            return resp.total_at_voltage(b) >= target;
        }
        return sweep_burst_flips(resp, a, b, omega, policy);
    };

    CalibrationLog log;

    // Phase 1: widen [0, v_k], doubling, until the sweep flips the spin.
    double lo = 0.0;
    double hi = 0.0;
    double v_k = v_max / std::pow(2.0, kExpandStartExponent);
    double v_prev = 0.0;
    while (true) {
        const bool flipped = flips(0.0, v_k);
        log.iterations.push_back({0.0, v_k, flipped});
        ++log.expand_steps;
        if (flipped) {
            lo = v_prev;
            hi = v_k;
            break;
        }
        if (v_k >= v_max) {
            throw CalibrationError(
                "find_resonance_voltage: no flip up to v_max (resonance not bracketed)");
        }
        v_prev = v_k;
        v_k = std::min(2.0 * v_k, v_max);
    }

    // Phase 2: bisect, re-running the flip test on the candidate sub-range.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const bool flipped = flips(lo, mid);
        log.iterations.push_back({lo, mid, flipped});
        if (flipped) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    log.final_v = 0.5 * (lo + hi);
    log.residual = std::abs(resp.total_at_voltage(log.final_v) - target);
    return log;
}

double calibrate_pi_duration(const DotParameters& p, const FieldConfig& f, bool strict) {
    if (!(f.b_ac > 0.0)) throw DomainError("calibrate_pi_duration: b_ac must be > 0");
    const double amp = drive_amplitude_energy(p.g_factor, f.b_ac);
    const double t_pi = pi_time(amp);
    if (strict) {
        // One lab-frame check in a comfortably rotating-wave regime.
        const double omega_rabi = rabi_rate(amp);
        const double omega_v = std::max(f.omega, 1000.0 * omega_rabi);
        DriveTerm d{amp, omega_v, 0.0, 0, DriveAxis::x};
        const HermitianMatrix h = build_single(hbar * omega_v);
        const SpinState out =
            evolve(SpinState::up(), h, d, t_pi, 2.0 * pi / omega_v / 200.0);
        if (out.probability(1) < 0.999) {
            throw CalibrationError("calibrate_pi_duration: strict verification failed");
        }
    }
    return t_pi;
}

}  // namespace spindot
