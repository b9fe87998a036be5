#include "spindot/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace spindot {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_floor, int max_levels) {
    if (!(b >= a)) throw DomainError("integrate: b must be >= a");
    if (a == b) return {0.0, 0.0, 0};

    // Romberg table over trapezoid refinements; R[k][k] is order 2k+2.
    std::vector<std::vector<double>> r;
    const double h0 = b - a;
    r.push_back({0.5 * h0 * (f(a) + f(b))});

    double prev = r[0][0];
    for (int k = 1; k <= max_levels; ++k) {
        const long n_new = 1L << (k - 1);  // new midpoints at this level
        const double h = h0 / static_cast<double>(1L << k);
        double s = 0.0;
        for (long i = 0; i < n_new; ++i) {
            s += f(a + (2.0 * static_cast<double>(i) + 1.0) * h);
        }
        std::vector<double> row(static_cast<size_t>(k) + 1);
        row[0] = 0.5 * r[k - 1][0] + h * s;
        double pow4 = 1.0;
        for (int j = 1; j <= k; ++j) {
            pow4 *= 4.0;
            row[static_cast<size_t>(j)] =
                (pow4 * row[static_cast<size_t>(j - 1)] - r[k - 1][static_cast<size_t>(j - 1)]) /
                (pow4 - 1.0);
        }
        r.push_back(row);

        const double cur = row[static_cast<size_t>(k)];
        const double diff = std::abs(cur - prev);
        const double scale = std::max({std::abs(cur), std::abs(prev), abs_floor});
        if (k >= 4 && (diff <= rel_tol * scale || scale == 0.0)) {
            return {cur, diff, k};
        }
        prev = cur;
    }

    const double cur = r.back().back();
    const double diff = std::abs(cur - r[r.size() - 2].back());
    const double scale = std::max(std::abs(cur), abs_floor);
    if (scale > 0.0 && diff > 1e-6 * scale) {
        throw NumericalError("integrate: quadrature failed to converge (rel err " +
                             std::to_string(diff / scale) + ")");
    }
    return {cur, diff, max_levels};
}

}  // namespace spindot
