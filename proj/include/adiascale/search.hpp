// search.hpp - conservative scale-factor search and ladder advancement.
#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "adiascale/evolution.hpp"
#include "adiascale/paths.hpp"

namespace adiascale {

struct SearchOptions {
    double gamma = 0.9;             // downward scan factor, 0 < gamma < 1
    double epsilon_tolerance = 0.0; // <= 0 means 0.01 * epsilon_th
    int max_doublings = 20;
    double floor_fraction = 1e-6;   // scan stops below floor_fraction * s_start
    int max_bisections = 200;
};

enum class SearchOutcome {
    found,
    too_easy,         // error never reached the threshold above the floor
    bracket_failure,  // error at s_start stayed above threshold after doubling
    bisection_failure
};

std::string to_string(SearchOutcome outcome);

struct ScaleSearchResult {
    SearchOutcome outcome = SearchOutcome::found;
    double s_c = 0.0;
    double epsilon_achieved = 0.0;
    // (scale with error >= threshold, scale with error < threshold)
    std::pair<double, double> bracket{0.0, 0.0};
    // Downward scan from the accepted starting scale, strictly decreasing in s.
    std::vector<std::pair<double, double>> scan_trace;
    double s_start = 0.0;  // starting scale after any doubling
    int evaluations = 0;

    bool ok() const { return outcome == SearchOutcome::found; }
};

using ErrorFunction = std::function<double(double)>;

// Geometric downward scan s <- gamma * s from s_start until the error first
// reaches eps_th, then log-space bisection on that bracket until
// |eps - eps_th| <= tolerance. Scanning down from the small-error side makes
// the result the largest threshold crossing the scan meets.
ScaleSearchResult find_scale_factor(const ErrorFunction& error, double eps_th, double s_start,
                                    const SearchOptions& options = {});

// What a cached traversal remembers about its evolution.
struct TraversalEvaluation {
    double error = 0.0;
    std::int64_t steps_taken = 0;
    int refinements = 0;
    double norm_drift = 0.0;
};

// Thread-safe memo of traversal errors keyed by (path identity, T_end, s,
// integrator tolerance).
class ErrorCache {
public:
    using Key = std::tuple<std::string, double, double, double>;

    std::optional<TraversalEvaluation> lookup(const Key& key) const;
    void store(const Key& key, const TraversalEvaluation& value);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<Key, TraversalEvaluation> values_;
};

// Error function for one traversal: s -> evolve(path, t_end, s).error,
// memoized in `cache` when given.
ErrorFunction traversal_error(const HamiltonianPath& path, double t_end,
                              const EvolutionOptions& evolution, ErrorCache* cache = nullptr);

ScaleSearchResult find_scale_factor(const HamiltonianPath& path, double t_end, double eps_th,
                                    double s_start, const SearchOptions& options = {},
                                    const EvolutionOptions& evolution = {},
                                    ErrorCache* cache = nullptr);

struct LadderStep {
    double t_end;
    double s_start;
};

// (k * t_end, kappa * s_c); requires k > 1 and kappa > 1.
LadderStep next_ladder(double t_end, double s_c, double k, double kappa);

}  // namespace adiascale
