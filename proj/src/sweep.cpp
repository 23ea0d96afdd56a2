#include "adiascale/sweep.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace adiascale {

std::vector<std::pair<double, double>> ScalingSeries::points(ProxyVariant v) const {
    std::vector<std::pair<double, double>> out;
    for (const auto& r : records) {
        const auto it = r.qd_over_l.find(v);
        if (it != r.qd_over_l.end()) out.emplace_back(r.length, it->second);
    }
    return out;
}

void fit_series(ScalingSeries& series, const std::vector<ProxyVariant>& variants) {
    series.fits.clear();
    for (const auto v : variants) {
        const auto pts = series.points(v);
        if (pts.size() >= 3) series.fits[v] = fit_loglinear(pts);
    }
}

namespace {

TraversalRecord run_point(const HamiltonianPath& path, const SweepConfig& config, int index, double t_end,
                          double s_start, ErrorCache& cache, int threads) {
    const auto started = std::chrono::steady_clock::now();
    TraversalRecord rec;
    rec.index = index;
    rec.t_end = t_end;
    rec.s_start = s_start;

    SearchOptions search;
    search.gamma = config.gamma;
    search.epsilon_tolerance = config.search_tolerance;
    EvolutionOptions evolution;
    evolution.relative_tolerance = config.integrator_tolerance;
    QuadratureOptions quadrature;
    quadrature.relative_tolerance = config.quadrature_tolerance;
    quadrature.threads = threads;

    try {
        const ScaleSearchResult found =
            find_scale_factor(path, t_end, config.epsilon_th, s_start, search, evolution, &cache);
        rec.evaluations = found.evaluations;
        if (!found.ok()) {
            rec.ok = false;
            rec.failure = to_string(found.outcome);
        } else {
            rec.s_c = found.s_c;
            rec.epsilon = found.epsilon_achieved;
            if (const auto hit = cache.lookup({path.identity(), t_end, found.s_c, evolution.relative_tolerance})) {
                rec.steps_taken = hit->steps_taken;
                rec.refinements = hit->refinements;
                rec.norm_drift = hit->norm_drift;
            }
            const GeometryIntegrals g = integrate_geometry(path, 0.0, t_end, quadrature);
            rec.length = g.length;
            rec.quadrature_intervals = g.intervals;
            for (const auto v : config.variants) {
                rec.qd[v] = found.s_c * g.proxy(v);
                rec.qd_over_l[v] = rec.qd[v] / g.length;
            }
            if (!(rec.length > 0.0)) {
                rec.ok = false;
                rec.failure = "zero path length";
            }
        }
    } catch (const NumericalError& e) {
        rec.ok = false;
        rec.failure = e.what();
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

}  // namespace

ScalingSeries run_sweep(const SweepConfig& config, const SweepHooks& hooks) {
    config.validate();
    const HamiltonianPath path = config.build_path(hooks.base_dir);

    ScalingSeries series;
    ErrorCache cache;
    double t_end = config.t0;
    double s_start = config.s_start;
    int index = 0;

    const auto absorb = [&](const TraversalRecord& rec) {
        if (rec.ok) {
            series.records.push_back(rec);
            const LadderStep next = next_ladder(rec.t_end, rec.s_c, config.k, config.kappa);
            t_end = next.t_end;
            s_start = next.s_start;
        } else {
            series.failures.push_back(rec);
            t_end = config.k * rec.t_end;
            s_start = config.s_start;
        }
        ++index;
    };

    for (const auto& rec : hooks.resume) {
        if (index >= config.ladder_points) break;
        if (rec.index != index || rec.t_end != t_end) {
            throw std::invalid_argument("resume: persisted records do not match this configuration's ladder");
        }
        absorb(rec);
    }

    for (; index < config.ladder_points;) {
        const TraversalRecord rec = run_point(path, config, index, t_end, s_start, cache, hooks.threads);
        if (hooks.on_record) hooks.on_record(rec);
        absorb(rec);
    }

    fit_series(series, config.variants);
    if (2 * static_cast<int>(series.failures.size()) > config.ladder_points) {
        throw NumericalError("sweep: " + std::to_string(series.failures.size()) + " of " +
                             std::to_string(config.ladder_points) + " ladder points failed");
    }
    return series;
}

}  // namespace adiascale
