// sweep.hpp - ladder sweeps and dimension studies.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adiascale/config.hpp"
#include "adiascale/fit.hpp"
#include "adiascale/geometry.hpp"
#include "adiascale/search.hpp"

namespace adiascale {

// One ladder point. Failed points keep t_end, s_start and the reason.
struct TraversalRecord {
    int index = 0;
    double t_end = 0.0;
    double s_start = 0.0;
    bool ok = true;
    std::string failure;
    double length = 0.0;
    double s_c = 0.0;
    double epsilon = 0.0;
    std::map<ProxyVariant, double> qd;
    std::map<ProxyVariant, double> qd_over_l;
    int evaluations = 0;
    std::int64_t steps_taken = 0;
    int refinements = 0;
    double norm_drift = 0.0;
    std::size_t quadrature_intervals = 0;
    double wall_time = 0.0;  // seconds; not part of the deterministic outputs
};

struct ScalingSeries {
    std::vector<TraversalRecord> records;   // successful, increasing t_end
    std::vector<TraversalRecord> failures;
    std::map<ProxyVariant, LinearFit> fits; // Q_D/L = a log L + b

    // Q_D/L against L for one variant.
    std::vector<std::pair<double, double>> points(ProxyVariant v) const;
};

struct SweepHooks {
    // Called after every ladder point (successful or not), in order.
    std::function<void(const TraversalRecord&)> on_record;
    // Previously persisted records to resume from (successes and failures in
    // ladder order).
    std::vector<TraversalRecord> resume;
    int threads = 1;
    // Relative file paths in the config resolve against this directory.
    std::filesystem::path base_dir;
};

// Runs the ladder. Throws std::invalid_argument for an invalid config (before
// any computation) and NumericalError if more than half the points fail.
ScalingSeries run_sweep(const SweepConfig& config, const SweepHooks& hooks = {});

// Fits every variant present on at least three successful records.
void fit_series(ScalingSeries& series, const std::vector<ProxyVariant>& variants);

struct DimStudyRow {
    int dimension = 0;
    double mean_length = 0.0;
    double std_length = 0.0;  // sample standard deviation
    int samples = 0;
    int redraws = 0;
};

struct DimStudyTable {
    std::vector<DimStudyRow> rows;
    double t_end = 0.0;
    std::uint64_t seed = 0;
    std::optional<LinearFit> log_fit;     // mean L = a log(dim) + b
    std::optional<LinearFit> linear_fit;  // mean L = a dim + b
};

struct DimStudyOptions {
    QuadratureOptions quadrature;
    int threads = 1;  // samples evaluated concurrently
    int max_redraws = 3;
    std::function<void(const std::string&)> log;
};

// Path length over [0, t_end] for `samples` random-trig paths per dimension.
// Sample i of dimension d uses seed derive_seed(seed, d, i, attempt).
DimStudyTable dim_study(const std::vector<int>& dims, int samples, double t_end, std::uint64_t seed,
                        const DimStudyOptions& options = {});

}  // namespace adiascale
