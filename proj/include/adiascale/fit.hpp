// fit.hpp - ordinary least squares for the scaling fits.
#pragma once

#include <span>
#include <utility>
#include <vector>

namespace adiascale {

struct LinearFit {
    double a = 0.0;          // slope
    double b = 0.0;          // intercept
    double residual = 0.0;   // Euclidean norm of residuals
    double stderr_a = 0.0;   // standard error of the slope
    double stderr_b = 0.0;
    std::size_t points = 0;

    // Slope in units of its standard error (infinite for an exact nonzero fit).
    double t_statistic() const;
    // a > 2 * stderr(a)
    bool superlinear() const { return a > 2.0 * stderr_a; }
};

// y = a x + b. Needs >= 3 points and non-constant x; throws
// std::invalid_argument otherwise.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

// y = a log(L) + b over (L, y) pairs; all L > 0.
LinearFit fit_loglinear(std::span<const std::pair<double, double>> points);

}  // namespace adiascale
