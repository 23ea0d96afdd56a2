#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adiascale/fit.hpp"
#include "adiascale/oracles.hpp"
#include "adiascale/rng.hpp"
#include "adiascale/search.hpp"

using namespace adiascale;

namespace {

double oscillatory(double s) { return std::min(1.0, (1.5 + std::sin(8.0 * std::log(s))) / s); }

}  // namespace

TEST_CASE("inverse error curve") {
    const ScaleSearchResult r = find_scale_factor([](double s) { return std::min(1.0, 1.0 / s); }, 0.1, 40.0);
    REQUIRE(r.ok());
    CHECK(std::abs(r.s_c / 10.0 - 1.0) < 0.01);
    CHECK(std::abs(r.epsilon_achieved - 0.1) <= 0.001);
    CHECK(r.bracket.first <= r.s_c);
    CHECK(r.s_c <= r.bracket.second);
}

TEST_CASE("oscillatory curve returns the largest crossing") {
    for (double s_start : {30.0, 100.0, 1000.0}) {
        const ScaleSearchResult r = find_scale_factor(oscillatory, 0.1, s_start);
        REQUIRE(r.ok());
        const double oracle = oracles::largest_threshold_crossing(oscillatory, 0.1, 1e-3, s_start);
        CHECK(std::abs(r.s_c / oracle - 1.0) < 0.01);
        for (std::size_t i = 1; i < r.scan_trace.size(); ++i) CHECK(r.scan_trace[i].first < r.scan_trace[i - 1].first);
    }
}

TEST_CASE("starting scale is doubled when too small") {
    const ScaleSearchResult r = find_scale_factor([](double s) { return std::min(1.0, 1.0 / s); }, 0.1, 1.0);
    REQUIRE(r.ok());
    CHECK(r.s_start >= 10.0);
    CHECK(std::abs(r.s_c / 10.0 - 1.0) < 0.01);
}

TEST_CASE("failure outcomes") {
    CHECK(find_scale_factor([](double) { return 0.0; }, 0.1, 10.0).outcome == SearchOutcome::too_easy);
    CHECK(find_scale_factor([](double) { return 0.5; }, 0.1, 10.0).outcome == SearchOutcome::bracket_failure);
    CHECK(to_string(SearchOutcome::too_easy) == "path-too-easy");
    CHECK_THROWS_AS(find_scale_factor([](double s) { return 1.0 / s; }, 1.5, 10.0), std::invalid_argument);
    SearchOptions bad;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(find_scale_factor([](double s) { return 1.0 / s; }, 0.1, 10.0, bad), std::invalid_argument);
}

TEST_CASE("constant path is too easy") {
    Matrix h0 = Matrix::Zero(2, 2);
    h0(1, 1) = 1.0;
    const ScaleSearchResult r = find_scale_factor(make_constant_path(h0), 10.0, 0.1, 10.0);
    CHECK(r.outcome == SearchOutcome::too_easy);
    CHECK_FALSE(r.ok());
}

TEST_CASE("search on a path is deterministic and rescales with the path") {
    const HamiltonianPath p = make_random_trig_path(5, 4);
    ErrorCache cache;
    const ScaleSearchResult a = find_scale_factor(p, 10.0, 0.1, 10.0, {}, {}, &cache);
    REQUIRE(a.ok());
    CHECK(std::abs(a.epsilon_achieved - 0.1) <= 0.001);
    CHECK(cache.size() > 0);
    const ScaleSearchResult b = find_scale_factor(p, 10.0, 0.1, 10.0);
    CHECK(a.s_c == b.s_c);
    CHECK(a.scan_trace == b.scan_trace);
    for (double alpha : {0.1, 3.0, 42.0}) {
        const ScaleSearchResult r = find_scale_factor(p.scaled(alpha), 10.0, 0.1, 10.0 / alpha);
        REQUIRE(r.ok());
        CHECK(std::abs(r.s_c * alpha / a.s_c - 1.0) < 0.01);
    }
}

TEST_CASE("error cache") {
    ErrorCache cache;
    const ErrorCache::Key key{"p", 10.0, 2.0, 1e-3};
    CHECK_FALSE(cache.lookup(key).has_value());
    cache.store(key, {0.25, 100, 2, 0.0});
    REQUIRE(cache.lookup(key).has_value());
    CHECK(cache.lookup(key)->error == 0.25);
    CHECK_FALSE(cache.lookup({"p", 10.0, 2.0, 1e-4}).has_value());
}

TEST_CASE("ladder advancement") {
    const LadderStep step = next_ladder(10.0, 5.0, 1.5, 2.0);
    CHECK(step.t_end == 15.0);
    CHECK(step.s_start == 10.0);
    CHECK_THROWS_AS(next_ladder(10.0, 5.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(next_ladder(10.0, 5.0, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("exact log-linear fit") {
    const std::vector<std::pair<double, double>> pts = {
        {10.0, 2.0 * std::log(10.0) + 1.0}, {100.0, 2.0 * std::log(100.0) + 1.0}, {1000.0, 2.0 * std::log(1000.0) + 1.0}};
    const LinearFit f = fit_loglinear(pts);
    CHECK(std::abs(f.a - 2.0) < 1e-10);
    CHECK(std::abs(f.b - 1.0) < 1e-10);
    CHECK(f.residual < 1e-10);
    CHECK(f.superlinear());
}

TEST_CASE("noisy fit recovers the slope") {
    NormalSource rng(99);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 20; ++i) {
        const double l = std::exp(0.3 * i + 1.0);
        pts.emplace_back(l, 0.7 * std::log(l) - 0.2 + 0.01 * rng.normal());
    }
    const LinearFit f = fit_loglinear(pts);
    CHECK(std::abs(f.a - 0.7) < 5.0 * f.stderr_a);
    CHECK(f.stderr_a > 0.0);
}

TEST_CASE("fit preconditions") {
    const std::vector<std::pair<double, double>> two = {{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS(fit_loglinear(two), std::invalid_argument);
    const std::vector<std::pair<double, double>> flat = {{5.0, 1.0}, {5.0, 2.0}, {5.0, 3.0}};
    CHECK_THROWS_AS(fit_loglinear(flat), std::invalid_argument);
    const std::vector<std::pair<double, double>> neg = {{-1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
    CHECK_THROWS_AS(fit_loglinear(neg), std::invalid_argument);
}

TEST_CASE("flat data is not superlinear") {
    const std::vector<std::pair<double, double>> pts = {{10.0, 1.0}, {20.0, 1.01}, {40.0, 0.99}, {80.0, 1.0}};
    CHECK_FALSE(fit_loglinear(pts).superlinear());
}
