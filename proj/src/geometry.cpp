#include "adiascale/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "adiascale/parallel.hpp"

namespace adiascale {

std::string to_string(ProxyVariant v) {
    switch (v) {
        case ProxyVariant::d1: return "D1";
        case ProxyVariant::d2: return "D2";
        case ProxyVariant::dhalf: return "Dhalf";
    }
    return "unknown";
}

ProxyVariant proxy_variant_from_string(const std::string& name) {
    if (name == "D1") return ProxyVariant::d1;
    if (name == "D2") return ProxyVariant::d2;
    if (name == "Dhalf") return ProxyVariant::dhalf;
    throw std::invalid_argument("unknown proxy variant '" + name + "' (expected D1, D2 or Dhalf)");
}

double NodeIntegrands::proxy(ProxyVariant v) const {
    switch (v) {
        case ProxyVariant::d1: return d1;
        case ProxyVariant::d2: return d2;
        case ProxyVariant::dhalf: return dhalf;
    }
    return 0.0;
}

double GeometryIntegrals::proxy(ProxyVariant v) const {
    switch (v) {
        case ProxyVariant::d1: return d1;
        case ProxyVariant::d2: return d2;
        case ProxyVariant::dhalf: return dhalf;
    }
    return 0.0;
}

namespace {

void check_gaps(const Spectrum& spectrum) {
    const double norm = spectrum.eigenvalues.cwiseAbs().maxCoeff();
    const double guard = 1e-8 * norm;
    if (spectrum.degenerate || spectrum.gap() < std::max(guard, kDegeneracyThreshold)) {
        std::ostringstream msg;
        msg << "ground_tangent: degenerate spectrum (ground gap " << spectrum.gap()
            << ", smallest adjacent gap " << spectrum.min_adjacent_gap() << ")";
        throw DegenerateSpectrum(msg.str(), spectrum.gap());
    }
}

// Gap E_k - E_g with round-off negatives clamped.
double excitation(const Spectrum& s, Eigen::Index k) {
    const double gap = s.eigenvalues(k) - s.eigenvalues(0);
    if (gap < -1e-12) throw NumericalError("geometry: negative excitation energy in sorted spectrum");
    return std::max(gap, 0.0);
}

}  // namespace

TangentData ground_tangent(const Spectrum& spectrum, const Matrix& h_dot) {
    check_gaps(spectrum);
    const Eigen::Index d = spectrum.dimension();
    const Vector g = spectrum.ground_state();
    const Vector hg = h_dot * g;
    TangentData out;
    out.components.resize(d - 1);
    for (Eigen::Index k = 1; k < d; ++k) {
        const double element = spectrum.eigenvectors.col(k).dot(hg);
        out.components(k - 1) = element / (spectrum.eigenvalues(0) - spectrum.eigenvalues(k));
    }
    out.speed = out.components.norm();
    out.spectrum = spectrum;
    return out;
}

TangentData ground_tangent(const HamiltonianPath& path, double t) {
    return ground_tangent(eigh(path.evaluate(t)), path.derivative(t));
}

Vector tangent_vector(const TangentData& tangent) {
    return tangent.spectrum.eigenvectors.rightCols(tangent.components.size()) * tangent.components;
}

NodeIntegrands node_integrands(const TangentData& tangent) {
    NodeIntegrands out;
    out.speed = tangent.speed;
    const double norm2 = tangent.components.squaredNorm();
    if (norm2 == 0.0) return out;
    double m1 = 0.0;
    double m2 = 0.0;
    double mhalf = 0.0;
    for (Eigen::Index k = 0; k < tangent.components.size(); ++k) {
        const double w = tangent.components(k) * tangent.components(k) / norm2;
        const double gap = excitation(tangent.spectrum, k + 1);
        m1 += gap * w;
        m2 += gap * gap * w;
        mhalf += std::sqrt(gap) * w;
    }
    out.d1 = m1;
    out.d2 = std::sqrt(m2);
    out.dhalf = mhalf * mhalf;
    return out;
}

std::vector<double> simpson_doubling(const std::function<void(double, double*)>& integrand,
                                     std::size_t width, double t0, double t1,
                                     const QuadratureOptions& options, std::size_t* intervals_used,
                                     double* final_change) {
    std::vector<double> result(width, 0.0);
    if (t1 == t0) {
        if (intervals_used) *intervals_used = 0;
        if (final_change) *final_change = 0.0;
        return result;
    }
    if (!(t1 > t0)) throw std::invalid_argument("quadrature: requires t1 >= t0");

    // Start near 8 intervals per unit time (the built-in paths oscillate with
    // periods of a few units), at least 64, always even.
    std::size_t n = std::max<std::size_t>(64, 2 * static_cast<std::size_t>(std::ceil(4.0 * (t1 - t0))));
    std::vector<double> values((n + 1) * width);
    const auto node_time = [&](std::size_t i, std::size_t count) {
        return t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count);
    };
    parallel_for(n + 1, options.threads, [&](std::size_t i) { integrand(node_time(i, n), &values[i * width]); });

    const auto simpson = [&](std::size_t count) {
        std::vector<double> s(width, 0.0);
        const double h = (t1 - t0) / static_cast<double>(count);
        for (std::size_t c = 0; c < width; ++c) {
            double acc = values[c] + values[count * width + c];
            for (std::size_t i = 1; i < count; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i * width + c];
            s[c] = acc * h / 3.0;
        }
        return s;
    };

    result = simpson(n);
    for (int doubling = 0; doubling < options.max_doublings; ++doubling) {
        const std::size_t m = 2 * n;
        std::vector<double> refined((m + 1) * width);
        for (std::size_t i = 0; i <= n; ++i) {
            std::copy_n(&values[i * width], width, &refined[2 * i * width]);
        }
        parallel_for(n, options.threads, [&](std::size_t j) {
            const std::size_t i = 2 * j + 1;
            integrand(node_time(i, m), &refined[i * width]);
        });
        values = std::move(refined);
        n = m;
        const std::vector<double> next = simpson(n);
        double worst = 0.0;
        bool converged = true;
        for (std::size_t c = 0; c < width; ++c) {
            const double change = std::abs(next[c] - result[c]);
            if (change > options.relative_tolerance * std::abs(next[c])) converged = false;
            if (next[c] != 0.0) worst = std::max(worst, change / std::abs(next[c]));
        }
        result = next;
        if (converged) {
            if (intervals_used) *intervals_used = n;
            if (final_change) *final_change = worst;
            return result;
        }
    }
    throw NumericalError("quadrature: no convergence within the doubling budget");
}

GeometryIntegrals integrate_geometry(const HamiltonianPath& path, double t0, double t1,
                                     const QuadratureOptions& options) {
    const auto integrand = [&](double t, double* out) {
        const NodeIntegrands node = node_integrands(ground_tangent(path, t));
        out[0] = node.speed;
        out[1] = node.d1;
        out[2] = node.d2;
        out[3] = node.dhalf;
    };
    GeometryIntegrals g;
    const std::vector<double> v =
        simpson_doubling(integrand, 4, t0, t1, options, &g.intervals, &g.max_relative_change);
    g.length = v[0];
    g.d1 = v[1];
    g.d2 = v[2];
    g.dhalf = v[3];
    return g;
}

double path_length(const HamiltonianPath& path, double t0, double t1, const QuadratureOptions& options) {
    const auto integrand = [&](double t, double* out) { out[0] = ground_tangent(path, t).speed; };
    return simpson_doubling(integrand, 1, t0, t1, options).front();
}

double qd_proxy(const HamiltonianPath& path, double t_end, double s_c, ProxyVariant variant,
                const QuadratureOptions& options) {
    if (!(s_c > 0.0)) throw std::invalid_argument("qd_proxy: s_c must be positive");
    const auto integrand = [&](double t, double* out) {
        out[0] = node_integrands(ground_tangent(path, t)).proxy(variant);
    };
    return s_c * simpson_doubling(integrand, 1, 0.0, t_end, options).front();
}

double qd_generic(const HamiltonianPath& path, double t_end, double s_c,
                  const std::function<double(double)>& f,
                  const std::function<double(double)>& f_inverse, const QuadratureOptions& options) {
    if (!(s_c > 0.0)) throw std::invalid_argument("qd_generic: s_c must be positive");
    const auto integrand = [&](double t, double* out) {
        const TangentData tangent = ground_tangent(path, t);
        const double norm2 = tangent.components.squaredNorm();
        double previous = f(0.0);
        double mean = 0.0;
        for (Eigen::Index k = 0; k < tangent.components.size(); ++k) {
            const double value = f(excitation(tangent.spectrum, k + 1));
            if (!(value > previous)) {
                throw std::invalid_argument("qd_generic: f is not increasing on the encountered gaps");
            }
            previous = value;
            if (norm2 > 0.0) mean += value * tangent.components(k) * tangent.components(k) / norm2;
        }
        out[0] = norm2 > 0.0 ? f_inverse(mean) : 0.0;
    };
    return s_c * simpson_doubling(integrand, 1, 0.0, t_end, options).front();
}

GapProfile ground_gap_profile(const HamiltonianPath& path, double t0, double t1, int points) {
    if (points < 2 || !(t1 > t0)) throw std::invalid_argument("ground_gap_profile: need points >= 2 and t1 > t0");
    EigenWorkspace ws(path.dimension());
    Matrix h(path.dimension(), path.dimension());
    GapProfile out;
    out.min_gap = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = t0 + (t1 - t0) * i / (points - 1);
        path.evaluate_into(t, h);
        ws.decompose(h);
        const double gap = ws.eigenvalues()(1) - ws.eigenvalues()(0);
        sum += gap;
        if (gap < out.min_gap) {
            out.min_gap = gap;
            out.t_min = t;
        }
    }
    out.mean_gap = sum / points;
    return out;
}

}  // namespace adiascale
