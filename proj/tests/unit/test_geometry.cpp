#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adiascale/errors.hpp"
#include "adiascale/geometry.hpp"
#include "adiascale/oracles.hpp"
#include "adiascale/rng.hpp"

using namespace adiascale;

namespace {

HamiltonianPath rotating_two_level(double gap, double rate) {
    Matrix h0 = Matrix::Zero(2, 2);
    h0(1, 1) = gap;
    Matrix k(2, 2);
    k << 0.0, -1.0, 1.0, 0.0;
    return make_translation_path(h0, k, rate);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("constant path has no tangent and no length") {
    Matrix h0 = Matrix::Zero(3, 3);
    h0.diagonal() << 0.0, 1.0, 3.0;
    const HamiltonianPath p = make_constant_path(h0);
    const TangentData t = ground_tangent(p, 2.0);
    CHECK(t.speed == 0.0);
    CHECK(t.components.cwiseAbs().maxCoeff() == 0.0);
    CHECK(path_length(p, 0.0, 5.0) == 0.0);
    CHECK(path_length(p, 3.0, 11.0) == 0.0);
}

TEST_CASE("translation path moves at constant speed") {
    const HamiltonianPath p = make_translation_path(3, 4, 0.05);
    for (double t : {0.0, 0.5, 5.0, 50.0, 170.0}) CHECK(std::abs(ground_tangent(p, t).speed - 0.05) < 1e-8);
    CHECK(rel(path_length(p, 0.0, 40.0), 0.05 * 40.0) < 1e-6);
    CHECK(rel(path_length(p, 2.0, 7.0), 0.05 * 5.0) < 1e-6);
}

TEST_CASE("tangent components agree with finite-difference eigenvector derivatives") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    NormalSource rng(31);
    for (int i = 0; i < 100; ++i) {
        const double t = i == 0 ? 1.0 : 100.0 * rng.uniform();
        const TangentData tangent = ground_tangent(p, t);
        const auto fd = oracles::finite_difference_tangent(p, t);
        CHECK((tangent_vector(tangent) - fd.perpendicular).cwiseAbs().maxCoeff() < 1e-5);
        CHECK(std::abs(fd.parallel) < 1e-6);
        CHECK(std::abs(tangent.speed * tangent.speed - tangent.components.squaredNorm()) < 1e-12);
        // the ground-state component is absent by construction
        CHECK(std::abs(tangent.spectrum.ground_state().dot(tangent_vector(tangent))) < 1e-12);
    }
}

TEST_CASE("degenerate points are refused") {
    Matrix h0 = Matrix::Identity(3, 3);
    const HamiltonianPath p = make_constant_path(h0);
    CHECK_THROWS_AS(ground_tangent(p, 0.0), DegenerateSpectrum);
}

TEST_CASE("path length is independent of parametrization") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    const double big_t = 10.0;
    const double direct = path_length(p, 0.0, big_t);
    // H(f(tau)) with f(tau) = tau^2 / T, f'(tau) = 2 tau / T
    const auto reparam = [&](double tau, double* out) {
        const double s = tau * tau / big_t;
        const Matrix h_dot = (2.0 * tau / big_t) * p.derivative(s);
        out[0] = ground_tangent(eigh(p.evaluate(s)), h_dot).speed;
    };
    QuadratureOptions opts;
    opts.relative_tolerance = 1e-8;
    const double other = simpson_doubling(reparam, 1, 0.0, big_t, opts).front();
    CHECK(rel(other, direct) < 1e-5);
}

TEST_CASE("single-gap proxy reduces to s_c * gap * T") {
    const HamiltonianPath p = rotating_two_level(1.7, 0.3);
    for (ProxyVariant v : kAllVariants) CHECK(rel(qd_proxy(p, 12.0, 4.0, v), 4.0 * 1.7 * 12.0) < 1e-6);
}

TEST_CASE("proxies are linear in s_c and increasing") {
    const HamiltonianPath p = make_random_trig_path(6, 4);
    for (ProxyVariant v : kAllVariants) {
        const double a = qd_proxy(p, 10.0, 3.0, v);
        CHECK(qd_proxy(p, 10.0, 6.0, v) == 2.0 * a);
        CHECK(qd_proxy(p, 10.0, 3.5, v) > a);
        CHECK(a > 0.0);
    }
}

TEST_CASE("proxies are invariant under joint rescaling") {
    const HamiltonianPath p = make_random_trig_path(6, 4);
    for (ProxyVariant v : kAllVariants) {
        const double base = qd_proxy(p, 10.0, 5.0, v);
        for (double alpha : {0.1, 3.0, 42.0}) CHECK(rel(qd_proxy(p.scaled(alpha), 10.0, 5.0 / alpha, v), base) < 1e-10);
    }
}

TEST_CASE("generic proxy reproduces the named variants") {
    const HamiltonianPath p = make_random_trig_path(2, 4);
    const double d1 = qd_proxy(p, 10.0, 2.0, ProxyVariant::d1);
    const double d2 = qd_proxy(p, 10.0, 2.0, ProxyVariant::d2);
    const double dh = qd_proxy(p, 10.0, 2.0, ProxyVariant::dhalf);
    const auto id = [](double x) { return x; };
    const auto sq = [](double x) { return x * x; };
    const auto rt = [](double x) { return std::sqrt(x); };
    CHECK(rel(qd_generic(p, 10.0, 2.0, id, id), d1) < 1e-10);
    CHECK(rel(qd_generic(p, 10.0, 2.0, sq, rt), d2) < 1e-10);
    CHECK(rel(qd_generic(p, 10.0, 2.0, rt, sq), dh) < 1e-10);
    const auto bump = [](double x) { return std::sin(x); };
    const auto unbump = [](double x) { return std::asin(x); };
    CHECK_THROWS_AS(qd_generic(p, 10.0, 2.0, bump, unbump), std::invalid_argument);
}

TEST_CASE("pointwise ordering of proxy integrands") {
    for (std::uint64_t seed : {2u, 5u, 6u}) {
        const HamiltonianPath p = make_random_trig_path(seed, 6);
        for (int i = 0; i < 200; ++i) {
            const NodeIntegrands n = node_integrands(ground_tangent(p, 0.25 * i));
            CHECK(n.d2 + 1e-10 >= n.d1);
            CHECK(n.d1 + 1e-10 >= n.dhalf);
        }
    }
}

TEST_CASE("quadrature converges under grid doubling") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    const GeometryIntegrals g = integrate_geometry(p, 0.0, 30.0);
    CHECK(g.max_relative_change < 1e-5);
    QuadratureOptions fine;
    fine.relative_tolerance = 1e-10;
    const GeometryIntegrals h = integrate_geometry(p, 0.0, 30.0, fine);
    CHECK(h.intervals > g.intervals);
    CHECK(rel(g.length, h.length) < 1e-5);
    for (ProxyVariant v : kAllVariants) CHECK(rel(g.proxy(v), h.proxy(v)) < 1e-5);
}

TEST_CASE("quadrature is identical for any thread count") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    QuadratureOptions one, four;
    four.threads = 4;
    const GeometryIntegrals a = integrate_geometry(p, 0.0, 20.0, one);
    const GeometryIntegrals b = integrate_geometry(p, 0.0, 20.0, four);
    CHECK(a.length == b.length);
    CHECK(a.d1 == b.d1);
    CHECK(a.d2 == b.d2);
    CHECK(a.dhalf == b.dhalf);
}

TEST_CASE("simpson is exact for cubics") {
    const auto cubic = [](double t, double* out) { out[0] = t * t * t - 2.0 * t; };
    CHECK(std::abs(simpson_doubling(cubic, 1, 0.0, 2.0, {}).front() - 0.0) < 1e-12);
}

TEST_CASE("variant names") {
    for (ProxyVariant v : kAllVariants) CHECK(proxy_variant_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(proxy_variant_from_string("D3"), std::invalid_argument);
}
