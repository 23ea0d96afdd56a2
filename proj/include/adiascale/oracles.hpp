// oracles.hpp - independent reference computations.
//
// Each routine here reaches its answer by a different route than the
// production code it is compared against (polynomial roots instead of a
// symmetric eigensolver, finite differences instead of perturbation theory,
// closed forms instead of propagation). Used by the test suites and by
// `adiascale verify`.
#pragma once

#include <functional>
#include <vector>

#include "adiascale/paths.hpp"

namespace adiascale::oracles {

// det(h - x I) by Gaussian elimination with partial pivoting.
double characteristic_polynomial(const Matrix& h, double x);

// Real roots of det(h - x I) for symmetric h: sign changes on a grid over
// the Gershgorin interval, refined by bisection. Ascending.
std::vector<double> characteristic_roots(const Matrix& h, int grid = 20000);

// exp(a) by a 40-term Taylor series with scaling and squaring.
Matrix taylor_exp(const Matrix& a, int terms = 40);

// Ground-state velocity by central differences of sign-aligned eigenvectors.
struct FiniteDifferenceTangent {
    Vector perpendicular;   // derivative with the component along g removed
    double parallel = 0.0;  // <g|dg/dt> before projection
};
FiniteDifferenceTangent finite_difference_tangent(const HamiltonianPath& path, double t, double h = 1e-5);

// Diabatic error for H(tau) = R(tau) diag(0, gap) R(tau)^T, R a planar
// rotation at angular rate `rate`, traversed with scale factor s_c over
// [0, t_end]. Rotating frame: two-level Rabi problem with coupling `rate`
// and detuning s_c * gap.
double rotating_two_level_error(double gap, double rate, double s_c, double t_end);

// Largest s in [s_min, s_max] where error(s) crosses `threshold`, found by
// scanning `points` log-spaced values downward from s_max and refining the
// first crossing by bisection.
double largest_threshold_crossing(const std::function<double(double)>& error, double threshold, double s_min,
                                  double s_max, int points = 10000);

}  // namespace adiascale::oracles
