#include <doctest.h>

#include <cmath>

#include "spindot/gates.hpp"

using namespace spindot;
using constants::hbar;
using constants::pi;

namespace {

DotParameters test_dot() {
    DotParameters p;
    p.g_factor = 2.0;
    return p;
}

// b_ac tuned so the Rabi rate sits at ratio * Larmor
FieldConfig test_fields(double rabi_over_larmor = 5e-3) {
    FieldConfig f;
    f.b_x = 1.0;
    f.e_y = 0.0;
    f.b_ac = rabi_over_larmor * 2.0 * f.b_x;  // g = 2: Delta = 2 mu_B B, amp = mu_B b_ac
    return f;
}

}  // namespace

TEST_CASE("rotate_single angles") {
    const DotParameters p = test_dot();
    const FieldConfig f = test_fields();
    const SplittingMode mode = SplittingMode::closed_form();

    SUBCASE("pi flips") {
        const GateResult r = rotate_single(SpinState::up(), pi, p, f, mode);
        CHECK(r.final_state.probability(1) >= 0.999);
        CHECK(r.fidelity >= 0.999);
        CHECK(r.conditional_leakage == 0.0);
    }
    SUBCASE("pi/2 gives half") {
        const GateResult r = rotate_single(SpinState::up(), pi / 2.0, p, f, mode);
        CHECK(std::abs(r.final_state.probability(1) - 0.5) <= 1e-3);
        CHECK(r.fidelity >= 0.999);
    }
    SUBCASE("2pi returns up to global phase") {
        Vector v(2);
        v << Complex(0.8, 0.0), Complex(0.0, 0.6);
        const GateResult r = rotate_single(SpinState{v}, 2.0 * pi, p, f, mode);
        CHECK(r.fidelity >= 0.999);
        CHECK(r.final_state.probability(0) == doctest::Approx(0.64).epsilon(2e-3));
    }
}

TEST_CASE("rotation composition about the same axis") {
    const DotParameters p = test_dot();
    const FieldConfig f = test_fields(2e-3);
    const SplittingMode mode = SplittingMode::closed_form();
    const double th1 = 0.7, th2 = 1.1;

    const GateResult r1 = rotate_single(SpinState::up(), th1, p, f, mode);
    // keep the second pulse frame-coherent: advance the drive phase by
    // omega * t1 so both rotations share the rotating-frame axis
    FieldConfig f2 = f;
    const double t1 = r1.schedule_used.segments.at(0).duration;
    const double omega = r1.schedule_used.segments.at(0).drive->omega;
    f2.phase = std::remainder(omega * t1, 2.0 * pi);
    const GateResult r2 = rotate_single(r1.final_state, th2, p, f2, mode);

    const GateResult rsum = rotate_single(SpinState::up(), th1 + th2, p, f, mode);
    const Complex ov =
        (rsum.final_state.amplitudes().adjoint() * r2.final_state.amplitudes())(0, 0);
    CHECK(std::norm(ov) >= 0.999);
}

TEST_CASE("gate_fidelity") {
    const Matrix id = Matrix::Identity(2, 2);
    CHECK(gate_fidelity(id, id) == doctest::Approx(1.0));
    const Complex phase = std::polar(1.0, 0.77);
    CHECK(gate_fidelity(phase * id, id) == doctest::Approx(1.0));
    CHECK(gate_fidelity(pauli::x(), id) == doctest::Approx(0.0));
    CHECK_THROWS_AS(gate_fidelity(Matrix::Identity(2, 2), Matrix::Identity(4, 4)), DomainError);
}

TEST_CASE("crot conditionality (ising)") {
    const double delta_t = 1.854802015660e-23;
    const double delta_c = 2.2 * delta_t;
    const double amp = 5e-3 * delta_t;  // hbar Omega
    const double j = 5.0 * amp;         // 4J = 20 hbar Omega
    DriveTerm d{amp, 0.0, 0.0, 1, DriveAxis::x};

    const GateResult r = crot(SpinState::basis_state(4, 0), pi, ControlState::up,
                              {delta_c, delta_t}, {ExchangeKind::ising, j}, d);
    CHECK(r.final_state.probability(1) >= 0.99);
    CHECK(r.fidelity >= 0.99);
    const double omega_rabi = amp / hbar;
    const double detuning = 4.0 * j / hbar;
    const double ceiling =
        omega_rabi * omega_rabi / (omega_rabi * omega_rabi + detuning * detuning);
    CHECK(r.conditional_leakage <= 1.5 * ceiling);
    CHECK(r.conditional_leakage > 0.0);

    // the drive frequency must be the exact eigenvalue difference Delta_T - 2J
    CHECK(r.schedule_used.segments.at(0).drive->omega ==
          doctest::Approx((delta_t - 2.0 * j) / hbar).epsilon(1e-12));

    // doubling J cuts the leakage
    const GateResult r2 = crot(SpinState::basis_state(4, 0), pi, ControlState::up,
                               {delta_c, delta_t}, {ExchangeKind::ising, 2.0 * j}, d);
    CHECK(r2.conditional_leakage < r.conditional_leakage);
}

TEST_CASE("crot with J = 0 has no conditionality") {
    const double delta_t = 1.854802015660e-23;
    const double amp = 5e-3 * delta_t;
    DriveTerm d{amp, 0.0, 0.0, 1, DriveAxis::x};
    const GateResult r = crot(SpinState::basis_state(4, 0), pi, ControlState::up,
                              {2.2 * delta_t, delta_t}, {ExchangeKind::ising, 0.0}, d);
    const double flip = r.final_state.probability(1) + r.final_state.probability(3);
    CHECK(std::abs(r.conditional_leakage - flip) <= 5e-3);  // both branches resonate
    CHECK(r.conditional_leakage >= 0.99);
}

TEST_CASE("crot branch symmetry") {
    const double delta_t = 1.854802015660e-23;
    const double delta_c = 2.2 * delta_t;
    const double amp = 5e-3 * delta_t;
    const double j = 5.0 * amp;
    DriveTerm d{amp, 0.0, 0.0, 1, DriveAxis::x};
    const GateResult up = crot(SpinState::basis_state(4, 0), pi, ControlState::up,
                               {delta_c, delta_t}, {ExchangeKind::ising, j}, d);
    const GateResult dn = crot(SpinState::basis_state(4, 2), pi, ControlState::down,
                               {delta_c, delta_t}, {ExchangeKind::ising, j}, d);
    CHECK(std::abs(up.fidelity - dn.fidelity) <= 1e-3);
    CHECK(dn.final_state.probability(3) >= 0.99);
}

TEST_CASE("heisenberg crot in the secular regime behaves ising-like") {
    const double delta_t = 1.854802015660e-23;
    const double delta_c = 2.2 * delta_t;
    const double amp = 5e-3 * delta_t;
    const double j = 5.0 * amp;
    DriveTerm d{amp, 0.0, 0.0, 1, DriveAxis::x};
    const GateResult r = crot(SpinState::basis_state(4, 0), pi, ControlState::up,
                              {delta_c, delta_t}, {ExchangeKind::heisenberg, j}, d);
    CHECK(r.final_state.probability(1) >= 0.99);
    CHECK(r.warnings.empty());
    // conditional shift stays within O(J^2/(dC-dT)) of the ising -2J law
    const double omega = r.schedule_used.segments.at(0).drive->omega;
    const double shift = delta_t - hbar * omega;  // expect ~ +2J for control up
    const double correction = 2.0 * j * j / (delta_c - delta_t);
    CHECK(std::abs(shift - 2.0 * j) <= 3.0 * correction + 1e-15 * delta_t);

    // leakage: drive-detuning ceiling plus the flip-flop beat between the
    // anti-aligned states (coupling 2J, splitting dC - dT)
    const double omega_rabi = amp / hbar;
    const double detuning = 4.0 * j / hbar;
    const double drive_ceiling =
        omega_rabi * omega_rabi / (omega_rabi * omega_rabi + detuning * detuning);
    const double v2 = 4.0 * (2.0 * j) * (2.0 * j);
    const double ff_ceiling = v2 / (v2 + std::pow(delta_c - delta_t, 2));
    CHECK(r.conditional_leakage <= 1.5 * (drive_ceiling + ff_ceiling));
    CHECK(r.conditional_leakage > 0.5 * ff_ceiling);  // the beat is really there
}

TEST_CASE("heisenberg crot with equal splittings warns") {
    const double delta_t = 1.854802015660e-23;
    const double amp = 5e-3 * delta_t;
    DriveTerm d{amp, 0.0, 0.0, 1, DriveAxis::x};
    const GateResult r = crot(SpinState::basis_state(4, 0), pi, ControlState::up,
                              {delta_t, delta_t}, {ExchangeKind::heisenberg, 5.0 * amp}, d);
    CHECK(!r.warnings.empty());
}

TEST_CASE("prepare_register") {
    const DotParameters p = test_dot();
    const FieldConfig f = test_fields();
    const SplittingMode mode = SplittingMode::closed_form();

    SUBCASE("all-up request: empty schedule, state unchanged") {
        const auto [state, sched] =
            prepare_register({ControlState::up, ControlState::up}, p, f, mode);
        CHECK(sched.segments.empty());
        CHECK(state.probability(0) == 1.0);
    }
    SUBCASE("single dot, down request: one pi segment, P(down) >= 0.999") {
        const auto [state, sched] = prepare_register({ControlState::down}, p, f, mode);
        CHECK(sched.segments.size() == 1);
        CHECK(state.probability(1) >= 0.999);
    }
    SUBCASE("pattern (up, down, up): one entry addressed to site 1") {
        const auto [state, sched] = prepare_register(
            {ControlState::up, ControlState::down, ControlState::up}, p, f, mode);
        CHECK(sched.segments.size() == 1);
        CHECK(sched.segments.at(0).drive->target_site == 1);
        // register |u d u>: basis index 0b010 = 2
        CHECK(state.probability(2) >= 0.999);
    }
    SUBCASE("factorized evolution matches the full-register engine") {
        const auto [state, sched] =
            prepare_register({ControlState::down, ControlState::down}, p, f, mode);
        const auto [engine_state, trace] = run_schedule(SpinState::basis_state(4, 0), sched);
        const Complex ov = (engine_state.amplitudes().adjoint() * state.amplitudes())(0, 0);
        CHECK(std::norm(ov) >= 1.0 - 1e-9);
    }
}

TEST_CASE("gate spec validation") {
    GateSpec s;
    s.angle = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.angle = 2.0 * pi;
    CHECK_NOTHROW(s.validate());
    s.angle = 2.0 * pi + 0.1;
    CHECK_THROWS_AS(s.validate(), DomainError);
}
