#include "adiascale/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace adiascale {

double LinearFit::t_statistic() const {
    if (stderr_a > 0.0) return a / stderr_a;
    if (a == 0.0) return 0.0;
    return a > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_linear: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("fit_linear: need at least 3 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw std::invalid_argument("fit_linear: non-finite data");
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_linear: degenerate design (all x equal)");

    LinearFit fit;
    fit.points = n;
    fit.a = sxy / sxx;
    fit.b = my - fit.a * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.a * x[i] + fit.b);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss);
    const double sigma2 = rss / static_cast<double>(n - 2);
    fit.stderr_a = std::sqrt(sigma2 / sxx);
    fit.stderr_b = std::sqrt(sigma2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
    return fit;
}

LinearFit fit_loglinear(std::span<const std::pair<double, double>> points) {
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [l, v] : points) {
        if (!(l > 0.0)) throw std::invalid_argument("fit_loglinear: L must be positive");
        x.push_back(std::log(l));
        y.push_back(v);
    }
    return fit_linear(x, y);
}

}  // namespace adiascale
