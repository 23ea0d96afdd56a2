#include "adiascale/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace adiascale {

double diabatic_error(const ComplexVector& psi, const Vector& g_f) {
    if (psi.size() != g_f.size()) throw std::invalid_argument("diabatic_error: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-8 || std::abs(g_f.norm() - 1.0) > 1e-8) {
        throw std::invalid_argument("diabatic_error: states must be normalized");
    }
    // Norm of the orthogonal component; unlike sqrt(1 - |<g|psi>|^2) this
    // stays accurate when the error is tiny.
    const ComplexVector g = g_f.cast<std::complex<double>>() / g_f.norm();
    const ComplexVector orthogonal = psi - g * g.dot(psi);
    return std::clamp(orthogonal.norm() / psi.norm(), 0.0, 1.0);
}

namespace {

// Each step is unitary to rounding; over ~1e6 steps the norm can still drift
// by ~1e-12. Returns the drift and removes it.
double renormalize(ComplexVector& psi) {
    const double norm = psi.norm();
    psi /= norm;
    return std::abs(norm - 1.0);
}

}  // namespace

double estimate_spectral_norm(const HamiltonianPath& path, double t_end, int grid_points) {
    const int n = std::max(grid_points, 2);
    EigenWorkspace ws(path.dimension());
    Matrix h(path.dimension(), path.dimension());
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
        path.evaluate_into(t, h);
        ws.decompose(h);
        norm = std::max(norm, ws.eigenvalues().cwiseAbs().maxCoeff());
    }
    return norm;
}

std::int64_t base_step_count(double t_end, double s_c, double norm, double phase) {
    // The relative slack keeps the count identical for (alpha H, s_c / alpha).
    const double raw = s_c * norm * t_end / phase;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw * (1.0 - 1e-12))));
}

ComplexVector propagate(const HamiltonianPath& path, double t_end, double s_c, std::int64_t steps,
                        const ComplexVector& initial) {
    if (steps < 1) throw std::invalid_argument("propagate: steps must be positive");
    const Eigen::Index d = path.dimension();
    const double dt = t_end / static_cast<double>(steps);
    EigenWorkspace ws(d);
    Matrix h(d, d);
    ComplexVector psi = initial;
    ComplexVector coeffs(d);
    for (std::int64_t j = 0; j < steps; ++j) {
        path.evaluate_into((static_cast<double>(j) + 0.5) * dt, h);
        ws.decompose(h);
        const Matrix& v = ws.eigenvectors();
        const Vector& e = ws.eigenvalues();
        coeffs.noalias() = v.transpose() * psi;
        for (Eigen::Index k = 0; k < d; ++k) coeffs(k) *= std::polar(1.0, -s_c * e(k) * dt);
        psi.noalias() = v * coeffs;
    }
    return psi;
}

ComplexMatrix step_unitary(const Spectrum& spectrum, double s_c, double dt) {
    const Eigen::Index d = spectrum.dimension();
    ComplexVector phases(d);
    for (Eigen::Index k = 0; k < d; ++k) phases(k) = std::polar(1.0, -s_c * spectrum.eigenvalues(k) * dt);
    const ComplexMatrix v = spectrum.eigenvectors.cast<std::complex<double>>();
    return v * phases.asDiagonal() * v.transpose();
}

EvolutionResult evolve(const HamiltonianPath& path, double t_end, double s_c,
                       const EvolutionOptions& options) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("evolve: T_end must be positive");
    if (!(s_c > 0.0) || !std::isfinite(s_c)) throw std::invalid_argument("evolve: s_c must be positive");

    const Spectrum initial = eigh(path.evaluate(0.0));
    const Spectrum final_spec = eigh(path.evaluate(t_end));
    if (initial.gap() < kDegeneracyThreshold) {
        throw DegenerateSpectrum("evolve: degenerate ground state at t = 0", initial.gap());
    }
    if (final_spec.gap() < kDegeneracyThreshold) {
        throw DegenerateSpectrum("evolve: degenerate ground state at T_end", final_spec.gap());
    }
    const ComplexVector psi0 = initial.ground_state().cast<std::complex<double>>();
    const Vector g_f = final_spec.ground_state();

    const double norm = estimate_spectral_norm(path, t_end, options.norm_grid_points);
    std::int64_t steps = base_step_count(t_end, s_c, norm, options.max_phase_per_step);

    EvolutionResult result;
    if (steps > options.step_budget) {
        throw EvolutionNotConverged("evolve: base step count " + std::to_string(steps) + " exceeds the step budget",
                                    result);
    }
    result.final_state = propagate(path, t_end, s_c, steps, psi0);
    result.norm_drift = renormalize(result.final_state);
    result.error = diabatic_error(result.final_state, g_f);
    result.steps_taken = steps;
    result.total_steps = steps;

    for (;;) {
        const std::int64_t finer = 2 * steps;
        if (result.total_steps + finer > options.step_budget) {
            throw EvolutionNotConverged("evolve: step budget exhausted before error converged", result);
        }
        ComplexVector psi = propagate(path, t_end, s_c, finer, psi0);
        const double drift = renormalize(psi);
        const double err = diabatic_error(psi, g_f);
        const double change = std::abs(err - result.error);
        result.final_state = std::move(psi);
        result.norm_drift = drift;
        result.error = err;
        result.steps_taken = finer;
        result.total_steps += finer;
        result.last_change = change;
        ++result.refinements;
        steps = finer;
        if (change < std::max(options.absolute_tolerance, options.relative_tolerance * err)) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace adiascale
