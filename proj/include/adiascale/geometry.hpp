// geometry.hpp - ground-state tangent, path length and the Q_D proxies.
//
// With the Berry gauge (<g|g_dot> = 0, sign continuity for real states) the
// ground-state velocity has components
//     c_k = <k|H_dot|g> / (E_g - E_k),   k != g,
// and every quantity below is a functional of c_k and the gaps E_k - E_g.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adiascale/paths.hpp"

namespace adiascale {

struct TangentData {
    Vector components;  // c_k for k = 1 .. d-1 (excited levels, ascending)
    double speed = 0.0; // sqrt(sum c_k^2)
    Spectrum spectrum;
};

// Throws DegenerateSpectrum if the spectrum at t is degenerate or any
// |E_k - E_g| < 1e-8 * ||H||_2.
TangentData ground_tangent(const HamiltonianPath& path, double t);
TangentData ground_tangent(const Spectrum& spectrum, const Matrix& h_dot);

// Perpendicular ground-state velocity sum_k c_k |k>.
Vector tangent_vector(const TangentData& tangent);

enum class ProxyVariant { d1, d2, dhalf };

std::string to_string(ProxyVariant v);
ProxyVariant proxy_variant_from_string(const std::string& name);
inline constexpr ProxyVariant kAllVariants[] = {ProxyVariant::d1, ProxyVariant::d2, ProxyVariant::dhalf};

// Per-time integrands at one path point. The proxy integrands are weighted
// means of the gaps with weights c_k^2 / sum c_k^2 (zero when speed == 0).
struct NodeIntegrands {
    double speed = 0.0;
    double d1 = 0.0;     // sum gap_k w_k
    double d2 = 0.0;     // sqrt(sum gap_k^2 w_k)
    double dhalf = 0.0;  // (sum sqrt(gap_k) w_k)^2

    double proxy(ProxyVariant v) const;
};

NodeIntegrands node_integrands(const TangentData& tangent);

struct QuadratureOptions {
    double relative_tolerance = 1e-6;
    int max_doublings = 22;
    int threads = 1;  // node evaluations; results do not depend on this
};

// Integrals over [t0, t1] of speed and of each proxy integrand, from one
// shared set of nodes. Composite Simpson on uniform grids, doubled until
// every integral changes by less than the relative tolerance.
struct GeometryIntegrals {
    double length = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double dhalf = 0.0;
    std::size_t intervals = 0;
    double max_relative_change = 0.0;

    double proxy(ProxyVariant v) const;
};

GeometryIntegrals integrate_geometry(const HamiltonianPath& path, double t0, double t1,
                                     const QuadratureOptions& options = {});

double path_length(const HamiltonianPath& path, double t0, double t1,
                   const QuadratureOptions& options = {});

// s_c * integral_0^T_end of the variant's integrand.
double qd_proxy(const HamiltonianPath& path, double t_end, double s_c, ProxyVariant variant,
                const QuadratureOptions& options = {});

// Generic proxy: s_c * integral of f^{-1}(sum f(gap_k) w_k). f must be
// increasing on the encountered gaps (checked at every node, including
// f(0) < f(smallest gap)); throws std::invalid_argument otherwise.
double qd_generic(const HamiltonianPath& path, double t_end, double s_c,
                  const std::function<double(double)>& f,
                  const std::function<double(double)>& f_inverse,
                  const QuadratureOptions& options = {});

// Simpson-with-doubling driver shared by the integrals above. `integrand`
// maps a node time to `width` values; convergence requires every component.
std::vector<double> simpson_doubling(const std::function<void(double, double*)>& integrand,
                                     std::size_t width, double t0, double t1,
                                     const QuadratureOptions& options,
                                     std::size_t* intervals_used = nullptr,
                                     double* final_change = nullptr);

// Ground-state gap sampled on a uniform grid of `points` >= 2 times over
// [t0, t1]. A small min/mean ratio flags a near-avoided crossing.
struct GapProfile {
    double min_gap = 0.0;
    double mean_gap = 0.0;
    double t_min = 0.0;  // where the minimum occurs

    double ratio() const { return min_gap / mean_gap; }
};

GapProfile ground_gap_profile(const HamiltonianPath& path, double t0, double t1, int points);

}  // namespace adiascale
