// evolution.hpp - midpoint-exponential propagation along a scaled traversal.
//
// In reference time tau in [0, T_end] the state obeys
//     i d psi / d tau = s_c H(tau) psi,
// i.e. the path is followed with velocity v_ref / s_c. Each step applies the
// exact exponential of the midpoint Hamiltonian, so every step is unitary.
#pragma once

#include <cstdint>

#include "adiascale/errors.hpp"
#include "adiascale/paths.hpp"

namespace adiascale {

struct EvolutionOptions {
    // Step-halving acceptance: |eps(dt/2) - eps(dt)| < max(absolute, relative * eps)
    double relative_tolerance = 1e-3;
    double absolute_tolerance = 1e-8;
    std::int64_t step_budget = 100'000'000;  // summed over all refinements
    // Base step keeps s_c * ||H||_2 * dt at or below this phase.
    double max_phase_per_step = 0.1;
    int norm_grid_points = 257;
};

struct EvolutionResult {
    ComplexVector final_state;
    double error = 0.0;
    std::int64_t steps_taken = 0;   // steps of the accepted (finest) run
    std::int64_t total_steps = 0;   // summed over refinements
    double norm_drift = 0.0;       // |norm - 1| accumulated by the accepted run, removed before return
    double last_change = 0.0;       // |eps change| at the final halving
    int refinements = 0;
    bool converged = false;
};

class EvolutionNotConverged : public NumericalError {
public:
    EvolutionNotConverged(const std::string& what, EvolutionResult partial)
        : NumericalError(what), partial_(std::move(partial)) {}
    const EvolutionResult& diagnostics() const noexcept { return partial_; }

private:
    EvolutionResult partial_;
};

// sqrt(1 - |<g_f|psi>|^2) clamped to [0, 1]. Both inputs must be unit norm to
// 1e-8.
double diabatic_error(const ComplexVector& psi, const Vector& g_f);

// Max spectral norm of H over a uniform grid on [0, t_end].
double estimate_spectral_norm(const HamiltonianPath& path, double t_end, int grid_points);

// Base step count: smallest N with s_c * norm * (t_end / N) <= phase.
std::int64_t base_step_count(double t_end, double s_c, double norm, double phase);

// Fixed-step midpoint-exponential propagation of `initial` over [0, t_end].
ComplexVector propagate(const HamiltonianPath& path, double t_end, double s_c, std::int64_t steps,
                        const ComplexVector& initial);

// exp(-i s_c H dt) for a decomposed H.
ComplexMatrix step_unitary(const Spectrum& spectrum, double s_c, double dt);

// Full traversal from the (sign-fixed) ground state of H(0): step halving
// until the error is converged, error measured against the ground state of
// H(t_end). Throws DegenerateSpectrum for degenerate endpoints and
// EvolutionNotConverged when the step budget runs out.
EvolutionResult evolve(const HamiltonianPath& path, double t_end, double s_c,
                       const EvolutionOptions& options = {});

}  // namespace adiascale
