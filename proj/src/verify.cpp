#include "adiascale/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "adiascale/evolution.hpp"
#include "adiascale/fit.hpp"
#include "adiascale/geometry.hpp"
#include "adiascale/oracles.hpp"
#include "adiascale/rng.hpp"
#include "adiascale/search.hpp"

namespace adiascale {

namespace {

std::string describe(double value, double limit) {
    std::ostringstream s;
    s.precision(3);
    s << "max deviation " << value << " (limit " << limit << ")";
    return s.str();
}

CheckResult bounded(const std::string& name, double deviation, double limit) {
    return {name, deviation <= limit, describe(deviation, limit)};
}

CheckResult eigenvalues_vs_polynomial() {
    NormalSource rng(11);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix h = random_symmetric(4, rng);
        const Spectrum s = eigh(h);
        const auto roots = oracles::characteristic_roots(h);
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(roots[static_cast<std::size_t>(k)] - s.eigenvalues(k)));
    }
    return bounded("eigenvalues match characteristic-polynomial roots", worst, 1e-8);
}

CheckResult reconstruction() {
    NormalSource rng(12);
    double worst = 0.0;
    for (Eigen::Index d : {4, 16, 64}) {
        const Matrix h = random_symmetric(d, rng);
        const Spectrum s = eigh(h);
        const double rec = (s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose() - h).norm();
        worst = std::max(worst, rec / (1.0 + h.norm()));
        worst = std::max(worst, (s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() * 1e-2);
    }
    return bounded("eigendecomposition reconstructs input", worst, 1e-10);
}

CheckResult exp_vs_taylor() {
    NormalSource rng(13);
    const Matrix h = random_symmetric(4, rng);
    const Matrix spectral = matrix_function(eigh(h), [](double x) { return std::exp(x); });
    const Matrix taylor = oracles::taylor_exp(h);
    return bounded("spectral exp matches Taylor series", (spectral - taylor).cwiseAbs().maxCoeff() / taylor.cwiseAbs().maxCoeff(), 1e-9);
}

CheckResult tangent_vs_finite_difference() {
    const HamiltonianPath path = make_random_trig_path(5, 4);
    NormalSource rng(14);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = 100.0 * rng.uniform();
        const Vector analytic = tangent_vector(ground_tangent(path, t));
        const auto fd = oracles::finite_difference_tangent(path, t);
        worst = std::max(worst, (analytic - fd.perpendicular).cwiseAbs().maxCoeff());
    }
    return bounded("perturbative tangent matches finite differences", worst, 1e-5);
}

CheckResult translation_speed() {
    const HamiltonianPath path = make_translation_path(3, 4, 0.05);
    double worst = 0.0;
    for (double t : {0.5, 5.0, 50.0}) worst = std::max(worst, std::abs(ground_tangent(path, t).speed - 0.05));
    return bounded("translation path ground state moves at speed v", worst, 1e-8);
}

CheckResult two_level_rabi() {
    const double gap = 1.3, rate = 0.7, s_c = 2.0, t_end = 7.0;
    const Matrix h0 = Vector((Vector(2) << 0.0, gap).finished()).asDiagonal();
    Matrix k(2, 2);
    k << 0.0, -1.0, 1.0, 0.0;
    const HamiltonianPath path = make_translation_path(h0, k, rate);
    EvolutionOptions opts;
    opts.relative_tolerance = 1e-7;
    const double numeric = evolve(path, t_end, s_c, opts).error;
    return bounded("two-level evolution matches rotating-frame solution",
                   std::abs(numeric - oracles::rotating_two_level_error(gap, rate, s_c, t_end)), 1e-6);
}

CheckResult no_go_invariance() {
    const HamiltonianPath path = make_random_trig_path(5, 4);
    const double base = evolve(path, 10.0, 5.0).error;
    double worst = 0.0;
    for (double alpha : {0.1, 3.0, 42.0}) worst = std::max(worst, std::abs(evolve(path.scaled(alpha), 10.0, 5.0 / alpha).error - base));
    return bounded("error invariant under H -> alpha H, s_c -> s_c / alpha", worst, 1e-12);
}

CheckResult search_largest_crossing() {
    const auto curve = [](double s) { return std::min(1.0, (1.5 + std::sin(8.0 * std::log(s))) / s); };
    const ScaleSearchResult r = find_scale_factor(curve, 0.1, 100.0);
    const double expected = oracles::largest_threshold_crossing(curve, 0.1, 1e-4, 100.0);
    return bounded("search returns the largest threshold crossing", std::abs(r.s_c / expected - 1.0), 0.01);
}

CheckResult proxy_ordering() {
    const HamiltonianPath path = make_random_trig_path(6, 4);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const NodeIntegrands n = node_integrands(ground_tangent(path, 0.37 * i));
        worst = std::max({worst, n.d1 - n.d2, n.dhalf - n.d1});
    }
    return bounded("pointwise D2 >= D1 >= Dhalf", std::max(worst, 0.0), 1e-10);
}

CheckResult exact_fit() {
    const std::vector<std::pair<double, double>> pts = {
        {10.0, 2.0 * std::log(10.0) + 1.0}, {100.0, 2.0 * std::log(100.0) + 1.0}, {1000.0, 2.0 * std::log(1000.0) + 1.0}};
    const LinearFit f = fit_loglinear(pts);
    return bounded("log-linear fit recovers exact coefficients", std::max(std::abs(f.a - 2.0), std::abs(f.b - 1.0)), 1e-10);
}

}  // namespace

std::vector<CheckResult> run_verification() {
    const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
        {"eigenvalues", eigenvalues_vs_polynomial},
        {"reconstruction", reconstruction},
        {"exp", exp_vs_taylor},
        {"tangent", tangent_vs_finite_difference},
        {"translation", translation_speed},
        {"rabi", two_level_rabi},
        {"no-go", no_go_invariance},
        {"search", search_largest_crossing},
        {"ordering", proxy_ordering},
        {"fit", exact_fit},
    };
    std::vector<CheckResult> results;
    for (const auto& [name, check] : checks) {
        try {
            results.push_back(check());
        } catch (const std::exception& e) {
            results.push_back({name, false, std::string("exception: ") + e.what()});
        }
    }
    return results;
}

}  // namespace adiascale
