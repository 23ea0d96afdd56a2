#include "adiascale/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adiascale::oracles {

double characteristic_polynomial(const Matrix& h, double x) {
    const Eigen::Index n = h.rows();
    std::vector<double> a(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = h(i, j) - (i == j ? x : 0.0);
    const auto at = [&](Eigen::Index i, Eigen::Index j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    double det = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index pivot = c;
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (std::abs(at(r, c)) > std::abs(at(pivot, c))) pivot = r;
        if (at(pivot, c) == 0.0) return 0.0;
        if (pivot != c) {
            for (Eigen::Index j = 0; j < n; ++j) std::swap(at(c, j), at(pivot, j));
            det = -det;
        }
        det *= at(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r) {
            const double f = at(r, c) / at(c, c);
            for (Eigen::Index j = c; j < n; ++j) at(r, j) -= f * at(c, j);
        }
    }
    return det;
}

std::vector<double> characteristic_roots(const Matrix& h, int grid) {
    const Eigen::Index n = h.rows();
    double lo = 0.0, hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double radius = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) radius += std::abs(h(i, j));
        lo = i == 0 ? h(i, i) - radius : std::min(lo, h(i, i) - radius);
        hi = i == 0 ? h(i, i) + radius : std::max(hi, h(i, i) + radius);
    }
    lo -= 1e-9 * (1.0 + std::abs(lo));
    hi += 1e-9 * (1.0 + std::abs(hi));

    std::vector<double> roots;
    double x0 = lo;
    double p0 = characteristic_polynomial(h, x0);
    for (int i = 1; i <= grid; ++i) {
        const double x1 = lo + (hi - lo) * i / grid;
        const double p1 = characteristic_polynomial(h, x1);
        if (p0 == 0.0) {
            roots.push_back(x0);
        } else if ((p0 < 0.0) != (p1 < 0.0) && p1 != 0.0) {
            double a = x0, b = x1, pa = p0;
            for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double pm = characteristic_polynomial(h, m);
                if (pm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((pm < 0.0) == (pa < 0.0)) {
                    a = m;
                    pa = pm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        p0 = p1;
    }
    if (static_cast<Eigen::Index>(roots.size()) != n) {
        if (grid < 10'000'000) return characteristic_roots(h, grid * 10);
        throw std::runtime_error("characteristic_roots: could not isolate all roots");
    }
    return roots;
}

Matrix taylor_exp(const Matrix& a, int terms) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.5) ++squarings;
    const Matrix scaled = a / std::ldexp(1.0, squarings);
    Matrix sum = Matrix::Identity(a.rows(), a.cols());
    Matrix term = sum;
    for (int k = 1; k <= terms; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

FiniteDifferenceTangent finite_difference_tangent(const HamiltonianPath& path, double t, double h) {
    const Spectrum centre = eigh(path.evaluate(t));
    Vector plus = eigh(path.evaluate(t + h)).eigenvectors.col(0);
    Vector minus = eigh(path.evaluate(t - h)).eigenvectors.col(0);
    const Vector g = centre.eigenvectors.col(0);
    if (plus.dot(g) < 0.0) plus = -plus;
    if (minus.dot(g) < 0.0) minus = -minus;
    const Vector derivative = (plus - minus) / (2.0 * h);
    FiniteDifferenceTangent out;
    out.parallel = g.dot(derivative);
    out.perpendicular = derivative - out.parallel * g;
    return out;
}

double rotating_two_level_error(double gap, double rate, double s_c, double t_end) {
    const double detuning = s_c * gap;
    const double rabi = std::sqrt(detuning * detuning + 4.0 * rate * rate);
    return std::abs(2.0 * rate / rabi * std::sin(0.5 * rabi * t_end));
}

double largest_threshold_crossing(const std::function<double(double)>& error, double threshold, double s_min,
                                  double s_max, int points) {
    const double log_min = std::log(s_min);
    const double log_max = std::log(s_max);
    double prev_s = s_max;
    double prev_e = error(prev_s);
    for (int i = 1; i < points; ++i) {
        const double s = std::exp(log_max - (log_max - log_min) * i / (points - 1));
        const double e = error(s);
        if ((prev_e < threshold) != (e < threshold)) {
            double hi = prev_s, lo = s;
            const bool hi_below = prev_e < threshold;
            for (int it = 0; it < 200; ++it) {
                const double mid = std::sqrt(lo * hi);
                if ((error(mid) < threshold) == hi_below) hi = mid;
                else lo = mid;
            }
            return std::sqrt(lo * hi);
        }
        prev_s = s;
        prev_e = e;
    }
    throw std::runtime_error("largest_threshold_crossing: no crossing in range");
}

}  // namespace adiascale::oracles
