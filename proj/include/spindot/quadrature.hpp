#pragma once

#include <functional>

#include "spindot/errors.hpp"

namespace spindot {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |last refinement step|
    int levels = 0;               // doublings performed
};

// Deterministic composite-Simpson integration with Richardson (Romberg)
// refinement. Refines by doubling the panel count until successive
// extrapolated values agree to rel_tol relative (with abs_floor guarding
// integrals whose true value is ~0). Throws NumericalError when the estimated
// error is still above 1e-6 relative at the level cap.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-9, double abs_floor = 0.0,
                           int max_levels = 22);

}  // namespace spindot
