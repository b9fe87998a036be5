#include "spindot/dot_model.hpp"

#include <cmath>

#include "spindot/quadrature.hpp"

namespace spindot {

using constants::hbar;
using constants::pi;

SplittingMode SplittingMode::with_alpha(double alpha_ev_m_per_vpm) {
    SplittingMode m{SplittingVariant::effective_alpha, alpha_ev_m_per_vpm};
    m.validate();
    return m;
}

void SplittingMode::validate() const {
    if (variant == SplittingVariant::effective_alpha && !(alpha > 0.0)) {
        throw ConfigError("run.alpha must be > 0 in effective_alpha mode");
    }
}

double subband_energy(const std::array<int, 3>& n, const DotParameters& p,
                      const std::array<double, 3>& widths) {
    double e = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (n[i] < 1) throw DomainError("subband_energy: quantum numbers must be >= 1");
        if (!(widths[i] > 0.0)) throw DomainError("subband_energy: widths must be > 0");
        const double k = static_cast<double>(n[i]) / widths[i];
        e += hbar * hbar * pi * pi / (2.0 * p.m_star) * k * k;
    }
    return e;
}

namespace {

double norm_1d(double w) { return std::sqrt(2.0 / w); }

// int_0^min(w,wp) phi(u,w) phi(u,wp) du    (dimensionless, in [0, 1])
double overlap_1d(double w, double wp) {
    const double lo = 0.0, hi = std::min(w, wp);
    const auto f = [&](double u) {
        return norm_1d(w) * std::sin(pi * u / w) * norm_1d(wp) * std::sin(pi * u / wp);
    };
    return integrate(f, lo, hi, 1e-11, 1e-6).value;
}

// int_0^min(w,wp) phi(z,w) d/dz phi(z,wp) dz    (scale ~ 1/W; 0 at w == wp)
double dz_integral_1d(double w, double wp) {
    const double lo = 0.0, hi = std::min(w, wp);
    const auto f = [&](double z) {
        return norm_1d(w) * std::sin(pi * z / w) * norm_1d(wp) * (pi / wp) *
               std::cos(pi * z / wp);
    };
    // The floor keeps the relative criterion meaningful near the vanishing
    // point; it sits six orders below the natural 1/W magnitude.
    return integrate(f, lo, hi, 1e-11, 1e-6 * 2.0 * pi / std::max(w, wp)).value;
}

}  // namespace

std::complex<double> pz_matrix_element(const DotParameters& p, PzMethod method) {
    p.validate();
    if (method == PzMethod::closed_form) {
        const double mag = 8.0 * hbar / std::sqrt(p.w[2] * p.wp[2]);
        const double c = std::cos(pi * p.w[0] / p.wp[0]);
        return {0.0, mag * c * c};
    }
    const double ox = overlap_1d(p.w[0], p.wp[0]);
    const double oy = overlap_1d(p.w[1], p.wp[1]);
    const double dz = dz_integral_1d(p.w[2], p.wp[2]);
    return {0.0, -hbar * ox * oy * dz};
}

double field_from_voltage(double voltage, double d_eff) {
    if (!(d_eff > 0.0)) throw DomainError("field_from_voltage: d_eff must be > 0");
    return voltage / d_eff;
}

namespace {

double offdiag_energy(const DotParameters& p, double e_y, const SplittingMode& mode) {
    switch (mode.variant) {
        case SplittingVariant::paper_closed_form: {
            // Verbatim closed form: Ey^2 * 16 e^2 hbar^4 / (m*^4 c^4 Wx Wpx) * cos^4(pi Wx/Wpx)
            const double e = constants::electron_charge;
            const double c = constants::speed_of_light;
            const double cosf = std::cos(pi * p.w[0] / p.wp[0]);
            const double rash2 = e_y * e_y * 16.0 * e * e * hbar * hbar * hbar * hbar /
                                 (std::pow(p.m_star, 4) * std::pow(c, 4) * p.w[0] * p.wp[0]) *
                                 std::pow(cosf, 4);
            return std::sqrt(rash2);
        }
        case SplittingVariant::quadrature: {
            const double pref = constants::electron_charge * hbar /
                                (2.0 * p.m_star * p.m_star * constants::speed_of_light *
                                 constants::speed_of_light);
            return pref * std::abs(e_y) * std::abs(pz_matrix_element(p, PzMethod::quadrature));
        }
        case SplittingVariant::effective_alpha: {
            mode.validate();
            const double alpha_j = ev_to_joules(mode.alpha);  // J m per (V/m)
            return alpha_j * std::abs(e_y) *
                   std::abs(pz_matrix_element(p, PzMethod::quadrature)) / hbar;
        }
    }
    throw DomainError("total_splitting: unknown splitting mode");
}

}  // namespace

SplittingBreakdown total_splitting(const DotParameters& p, const FieldConfig& f,
                                   const SplittingMode& mode) {
    p.validate();
    SplittingBreakdown b;
    b.zeeman = p.g_factor * constants::bohr_magneton * f.b_x;
    b.rashba_diag = 0.0;  // <p_x> = 0 for the box states
    b.rashba_offdiag = offdiag_energy(p, f.rashba_field(), mode);
    const double half = b.zeeman / 2.0 + b.rashba_diag;
    b.total = 2.0 * std::sqrt(half * half + b.rashba_offdiag * b.rashba_offdiag);
    return b;
}

SplittingBreakdown splitting_at_voltage(const DotParameters& p, const FieldConfig& f,
                                        const SplittingMode& mode, double v) {
    FieldConfig fv = f;
    fv.gate_voltage = v;
    fv.e_y = 0.0;
    fv.rashba_source = RashbaSource::voltage;
    return total_splitting(p, fv, mode);
}

SplittingResponse make_splitting_response(const DotParameters& p, const FieldConfig& f,
                                          const SplittingMode& mode) {
    p.validate();
    SplittingResponse r;
    r.zeeman = p.g_factor * constants::bohr_magneton * f.b_x;
    r.offdiag_per_field = offdiag_energy(p, 1.0, mode);
    r.d_eff = f.d_eff;
    return r;
}

}  // namespace spindot
