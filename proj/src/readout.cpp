#include "spindot/readout.hpp"

#include <algorithm>
#include <cmath>

#include "spindot/constants.hpp"

namespace spindot {

void AnalyzerConfig::validate() const {
    if (polarization < 0.0 || polarization > 1.0) {
        throw DomainError("AnalyzerConfig: polarization must be in [0, 1]");
    }
    if (injector_polarization < 0.0 || injector_polarization > 1.0) {
        throw DomainError("AnalyzerConfig: injector_polarization must be in [0, 1]");
    }
    const double n = std::sqrt(magnetization_axis[0] * magnetization_axis[0] +
                               magnetization_axis[1] * magnetization_axis[1] +
                               magnetization_axis[2] * magnetization_axis[2]);
    if (std::abs(n - 1.0) > 1e-12) {
        throw DomainError("AnalyzerConfig: magnetization_axis must be normalized to 1e-12");
    }
    if (!(capacitance > 0.0)) throw DomainError("AnalyzerConfig: capacitance must be > 0");
    if (i_max < 0.0) throw DomainError("AnalyzerConfig: i_max must be >= 0");
}

std::array<double, 3> bloch_vector(const SpinState& state) {
    if (state.dim() != 2) throw DomainError("bloch_vector: state must have dim 2");
    const Complex a0 = state.amplitudes()(0);
    const Complex a1 = state.amplitudes()(1);
    const Complex cross = std::conj(a0) * a1;
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(a0) - std::norm(a1)};
}

ReadoutResult readout_current(const SpinState& state, const AnalyzerConfig& a) {
    a.validate();
    const double blockade_volts =
        constants::electron_charge / (2.0 * a.capacitance);  // e/2C in volts
    if (!(a.read_voltage > blockade_volts)) {
        return {0.0, true};
    }
    const auto b = bloch_vector(state);
    const double proj = b[0] * a.magnetization_axis[0] + b[1] * a.magnetization_axis[1] +
                        b[2] * a.magnetization_axis[2];
    const double p_eff = a.injector_polarization * a.polarization;
    return {a.i_max * (1.0 + p_eff * proj) / 2.0, false};
}

namespace {

// Spinor pointing along the unit vector n (standard spherical convention).
void axis_spinors(const std::array<double, 3>& n, Vector& plus, Vector& minus) {
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw DomainError("sample_measurement: axis must be a unit vector");
    }
    const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
    const double phi = std::atan2(n[1], n[0]);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const Complex eip(std::cos(phi), std::sin(phi));
    plus = Vector(2);
    minus = Vector(2);
    plus << Complex(c, 0.0), eip * s;
    minus << Complex(-s, 0.0), eip * c;
}

MeasurementOutcome sample_impl(const SpinState& state, const std::array<double, 3>& axis,
                               double u) {
    if (state.dim() != 2) throw DomainError("sample_measurement: state must have dim 2");
    Vector plus, minus;
    axis_spinors(axis, plus, minus);
    const Complex amp_plus = (plus.adjoint() * state.amplitudes())(0, 0);
    const double p_plus = std::norm(amp_plus);
    if (u < p_plus) {
        return {0, SpinState(plus)};
    }
    return {1, SpinState(minus)};
}

}  // namespace

MeasurementOutcome sample_measurement(const SpinState& state, const std::array<double, 3>& axis,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return sample_impl(state, axis, dist(rng));
}

MeasurementOutcome MeasurementSampler::sample(const SpinState& state,
                                              const std::array<double, 3>& axis) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return sample_impl(state, axis, dist(rng_));
}

}  // namespace spindot
