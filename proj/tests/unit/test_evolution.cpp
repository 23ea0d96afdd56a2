#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "adiascale/errors.hpp"
#include "adiascale/evolution.hpp"
#include "adiascale/oracles.hpp"
#include "adiascale/paths.hpp"

using namespace adiascale;
using cplx = std::complex<double>;

namespace {

HamiltonianPath rotating_two_level(double gap, double rate) {
    Matrix h0 = Matrix::Zero(2, 2);
    h0(1, 1) = gap;
    Matrix k(2, 2);
    k << 0.0, -1.0, 1.0, 0.0;
    return make_translation_path(h0, k, rate);
}

}  // namespace

TEST_CASE("diabatic error of simple states") {
    Vector g(3);
    g << 1.0, 0.0, 0.0;
    ComplexVector psi = g.cast<cplx>();
    CHECK(diabatic_error(psi, g) == doctest::Approx(0.0));
    psi << 0.0, 1.0, 0.0;
    CHECK(diabatic_error(psi, g) == doctest::Approx(1.0));
    psi << cplx(1.0 / std::sqrt(2.0)), 0.0, cplx(0.0, 1.0 / std::sqrt(2.0));
    CHECK(diabatic_error(psi, g) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    psi << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(diabatic_error(psi, g), std::invalid_argument);
}

TEST_CASE("constant path stays in its ground state") {
    Matrix h0 = Matrix::Zero(3, 3);
    h0.diagonal() << -1.0, 0.5, 2.0;
    h0(0, 2) = h0(2, 0) = 0.3;
    const HamiltonianPath p = make_constant_path(h0);
    for (double s_c : {0.1, 1.0, 37.0}) {
        const EvolutionResult r = evolve(p, 10.0, s_c);
        CHECK(r.error < 1e-10);
        CHECK(r.converged);
        const Vector g = eigh(h0).ground_state();
        const cplx overlap = g.cast<cplx>().dot(r.final_state);
        CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
    }
}

TEST_CASE("rotating two-level system matches the analytic solution") {
    EvolutionOptions opts;
    opts.relative_tolerance = 1e-7;
    for (auto [gap, rate, s_c, t_end] : {std::tuple{1.0, 0.2, 1.0, 10.0}, std::tuple{1.3, 0.7, 2.0, 7.0},
                                          std::tuple{0.5, 0.05, 10.0, 25.0}, std::tuple{2.0, 1.0, 0.3, 3.0}}) {
        const double numeric = evolve(rotating_two_level(gap, rate), t_end, s_c, opts).error;
        const double exact = oracles::rotating_two_level_error(gap, rate, s_c, t_end);
        CHECK(std::abs(numeric - exact) < 1e-6);
    }
}

TEST_CASE("slower traversal is more adiabatic") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    CHECK(evolve(p, 10.0, 100.0).error < evolve(p, 10.0, 1.0).error);
}

TEST_CASE("step unitaries are unitary") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    for (double t : {0.0, 3.3, 9.9}) {
        for (double dt : {1e-4, 0.01, 1.0}) {
            const ComplexMatrix u = step_unitary(eigh(p.evaluate(t)), 25.0, dt);
            CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("final state keeps unit norm and error within bounds") {
    const HamiltonianPath p = make_random_trig_path(6, 4);
    for (double s_c : {0.5, 5.0, 50.0}) {
        const EvolutionResult r = evolve(p, 10.0, s_c);
        CHECK(std::abs(r.final_state.norm() - 1.0) < 1e-12);
        CHECK(r.norm_drift < 1e-9);
        CHECK(r.error >= 0.0);
        CHECK(r.error <= 1.0 + 1e-12);
    }
}

TEST_CASE("step halving criterion holds for the accepted result") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    const EvolutionResult r = evolve(p, 10.0, 5.0);
    REQUIRE(r.converged);
    CHECK(r.refinements >= 1);
    CHECK(r.last_change < std::max(1e-8, 1e-3 * r.error));
    // independent check: one more halving barely moves the result
    const Vector g_f = eigh(p.evaluate(10.0)).ground_state();
    const ComplexVector psi0 = Vector(eigh(p.evaluate(0.0)).ground_state()).cast<cplx>();
    const double finer = diabatic_error(propagate(p, 10.0, 5.0, 2 * r.steps_taken, psi0), g_f);
    CHECK(std::abs(finer - r.error) < std::max(1e-8, 1e-3 * r.error));
}

TEST_CASE("base step respects the phase limit") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    const double norm = estimate_spectral_norm(p, 10.0, 257);
    CHECK(norm > 0.0);
    const std::int64_t n = base_step_count(10.0, 7.0, norm, 0.1);
    CHECK(7.0 * norm * 10.0 / double(n) <= 0.1 * (1.0 + 1e-12));
    CHECK(7.0 * norm * 10.0 / double(n - 1) > 0.1);
}

TEST_CASE("global phase does not change the error") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    const Vector g_f = eigh(p.evaluate(10.0)).ground_state();
    const ComplexVector psi0 = Vector(eigh(p.evaluate(0.0)).ground_state()).cast<cplx>();
    const double base = diabatic_error(propagate(p, 10.0, 3.0, 4000, psi0), g_f);
    for (double phase : {0.3, 1.7, -2.9}) {
        const ComplexVector shifted = std::polar(1.0, phase) * psi0;
        CHECK(std::abs(diabatic_error(propagate(p, 10.0, 3.0, 4000, shifted), g_f) - base) < 1e-12);
    }
}

TEST_CASE("rescaling the Hamiltonian and the scale factor together leaves the error unchanged") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    const EvolutionResult base = evolve(p, 10.0, 5.0);
    for (double alpha : {0.1, 3.0, 42.0}) {
        const EvolutionResult r = evolve(p.scaled(alpha), 10.0, 5.0 / alpha);
        CHECK(r.steps_taken == base.steps_taken);
        CHECK(std::abs(r.error - base.error) < 1e-12);
    }
}

TEST_CASE("evolution preconditions") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    CHECK_THROWS_AS(evolve(p, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evolve(p, 1.0, -1.0), std::invalid_argument);
    const HamiltonianPath flat = make_constant_path(Matrix::Identity(2, 2));
    CHECK_THROWS_AS(evolve(flat, 1.0, 1.0), DegenerateSpectrum);
}

TEST_CASE("exhausted step budget carries diagnostics") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    EvolutionOptions opts;
    opts.step_budget = 100;
    opts.relative_tolerance = 1e-12;
    opts.absolute_tolerance = 0.0;
    try {
        evolve(p, 10.0, 5.0, opts);
        FAIL("expected non-convergence");
    } catch (const EvolutionNotConverged& e) {
        CHECK_FALSE(e.diagnostics().converged);
        CHECK(e.diagnostics().total_steps <= 100);
    }
}
