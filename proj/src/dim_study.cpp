#include "adiascale/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "adiascale/parallel.hpp"
#include "adiascale/rng.hpp"

namespace adiascale {

DimStudyTable dim_study(const std::vector<int>& dims, int samples, double t_end, std::uint64_t seed,
                        const DimStudyOptions& options) {
    if (dims.empty()) throw std::invalid_argument("dim_study: no dimensions given");
    for (int d : dims) {
        if (d < 2) throw std::invalid_argument("dim_study: dimensions must be >= 2");
    }
    if (samples < 2) throw std::invalid_argument("dim_study: samples must be >= 2");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("dim_study: t_end must be >= 0");

    DimStudyTable table;
    table.t_end = t_end;
    table.seed = seed;
    for (int d : dims) {
        std::vector<double> lengths(static_cast<std::size_t>(samples), 0.0);
        std::vector<int> redraws(static_cast<std::size_t>(samples), 0);
        std::vector<std::string> notes(static_cast<std::size_t>(samples));
        parallel_for(static_cast<std::size_t>(samples), options.threads, [&](std::size_t i) {
            for (int attempt = 0;; ++attempt) {
                const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(d), i, static_cast<std::uint64_t>(attempt));
                try {
                    const HamiltonianPath path = make_random_trig_path(s, d);
                    lengths[i] = path_length(path, 0.0, t_end, options.quadrature);
                    redraws[i] = attempt;
                    return;
                } catch (const DegenerateSpectrum& e) {
                    notes[i] += "dim " + std::to_string(d) + " sample " + std::to_string(i) + " attempt " +
                                std::to_string(attempt) + ": " + e.what() + "\n";
                    if (attempt >= options.max_redraws) {
                        throw NumericalError("dim_study: sample " + std::to_string(i) + " of dimension " +
                                             std::to_string(d) + " stayed degenerate after redraws");
                    }
                }
            }
        });
        DimStudyRow row;
        row.dimension = d;
        row.samples = samples;
        double sum = 0.0;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            sum += lengths[i];
            row.redraws += redraws[i];
            if (options.log && !notes[i].empty()) options.log(notes[i]);
        }
        row.mean_length = sum / samples;
        double ss = 0.0;
        for (double l : lengths) ss += (l - row.mean_length) * (l - row.mean_length);
        row.std_length = std::sqrt(ss / (samples - 1));
        table.rows.push_back(row);
    }

    if (table.rows.size() >= 3) {
        std::vector<double> x, y;
        bool distinct = false;
        for (const auto& r : table.rows) {
            x.push_back(r.dimension);
            y.push_back(r.mean_length);
            distinct = distinct || r.dimension != table.rows.front().dimension;
        }
        if (distinct) {
            table.linear_fit = fit_linear(x, y);
            for (double& v : x) v = std::log(v);
            table.log_fit = fit_linear(x, y);
        }
    }
    return table;
}

}  // namespace adiascale
