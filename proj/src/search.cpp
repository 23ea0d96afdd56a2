#include "adiascale/search.hpp"

#include <cmath>
#include <stdexcept>

namespace adiascale {

std::string to_string(SearchOutcome outcome) {
    switch (outcome) {
        case SearchOutcome::found: return "found";
        case SearchOutcome::too_easy: return "path-too-easy";
        case SearchOutcome::bracket_failure: return "bracket-failure";
        case SearchOutcome::bisection_failure: return "bisection-failure";
    }
    return "unknown";
}

ScaleSearchResult find_scale_factor(const ErrorFunction& error, double eps_th, double s_start,
                                    const SearchOptions& options) {
    if (!(eps_th > 0.0 && eps_th < 1.0)) throw std::invalid_argument("find_scale_factor: eps_th must lie in (0, 1)");
    if (!(options.gamma > 0.0 && options.gamma < 1.0)) throw std::invalid_argument("find_scale_factor: gamma must lie in (0, 1)");
    if (!(s_start > 0.0) || !std::isfinite(s_start)) throw std::invalid_argument("find_scale_factor: s_start must be positive");
    const double tol = options.epsilon_tolerance > 0.0 ? options.epsilon_tolerance : 0.01 * eps_th;

    ScaleSearchResult result;
    const auto eval = [&](double s) {
        ++result.evaluations;
        return error(s);
    };

    double s = s_start;
    double eps = eval(s);
    for (int i = 0; eps >= eps_th && i < options.max_doublings; ++i) {
        s *= 2.0;
        eps = eval(s);
    }
    result.s_start = s;
    if (eps >= eps_th) {
        result.outcome = SearchOutcome::bracket_failure;
        result.s_c = s;
        result.epsilon_achieved = eps;
        return result;
    }
    result.scan_trace.emplace_back(s, eps);

    const double floor = options.floor_fraction * s_start;
    double above = s;  // error below threshold here
    double below = 0.0;
    double eps_below = 0.0;
    for (;;) {
        const double next = options.gamma * above;
        if (next < floor) {
            result.outcome = SearchOutcome::too_easy;
            result.s_c = above;
            result.epsilon_achieved = result.scan_trace.back().second;
            return result;
        }
        const double e = eval(next);
        result.scan_trace.emplace_back(next, e);
        if (e >= eps_th) {
            below = next;
            eps_below = e;
            break;
        }
        above = next;
    }

    result.bracket = {below, above};
    if (std::abs(eps_below - eps_th) <= tol) {
        result.s_c = below;
        result.epsilon_achieved = eps_below;
        return result;
    }
    const double eps_above = result.scan_trace[result.scan_trace.size() - 2].second;
    if (std::abs(eps_above - eps_th) <= tol) {
        result.s_c = above;
        result.epsilon_achieved = eps_above;
        return result;
    }

    double lo = below;
    double hi = above;
    for (int i = 0; i < options.max_bisections; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double e = eval(mid);
        if (std::abs(e - eps_th) <= tol) {
            result.s_c = mid;
            result.epsilon_achieved = e;
            result.bracket = {lo, hi};
            return result;
        }
        if (e >= eps_th) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * hi) break;
    }
    result.outcome = SearchOutcome::bisection_failure;
    result.bracket = {lo, hi};
    result.s_c = std::sqrt(lo * hi);
    result.epsilon_achieved = eval(result.s_c);
    return result;
}

std::optional<TraversalEvaluation> ErrorCache::lookup(const Key& key) const {
    std::lock_guard lock(mutex_);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void ErrorCache::store(const Key& key, const TraversalEvaluation& value) {
    std::lock_guard lock(mutex_);
    values_.emplace(key, value);
}

std::size_t ErrorCache::size() const {
    std::lock_guard lock(mutex_);
    return values_.size();
}

ErrorFunction traversal_error(const HamiltonianPath& path, double t_end,
                              const EvolutionOptions& evolution, ErrorCache* cache) {
    return [path, t_end, evolution, cache](double s) {
        const ErrorCache::Key key{path.identity(), t_end, s, evolution.relative_tolerance};
        if (cache != nullptr) {
            if (const auto hit = cache->lookup(key)) return hit->error;
        }
        const EvolutionResult r = evolve(path, t_end, s, evolution);
        if (cache != nullptr) cache->store(key, {r.error, r.steps_taken, r.refinements, r.norm_drift});
        return r.error;
    };
}

ScaleSearchResult find_scale_factor(const HamiltonianPath& path, double t_end, double eps_th,
                                    double s_start, const SearchOptions& options,
                                    const EvolutionOptions& evolution, ErrorCache* cache) {
    const ErrorFunction error = traversal_error(path, t_end, evolution, cache);
    ScaleSearchResult result = find_scale_factor(error, eps_th, s_start, options);
    if (result.ok()) {
        // Post-hoc confirmation of the accepted root.
        const double tol = options.epsilon_tolerance > 0.0 ? options.epsilon_tolerance : 0.01 * eps_th;
        const double check = error(result.s_c);
        if (std::abs(check - eps_th) > tol) {
            throw NumericalError("find_scale_factor: re-evaluated error " + std::to_string(check) +
                                 " misses the threshold");
        }
    }
    return result;
}

LadderStep next_ladder(double t_end, double s_c, double k, double kappa) {
    if (!(k > 1.0)) throw std::invalid_argument("next_ladder: k must exceed 1");
    if (!(kappa > 1.0)) throw std::invalid_argument("next_ladder: kappa must exceed 1");
    return {k * t_end, kappa * s_c};
}

}  // namespace adiascale
