// adiascale - command-line driver for ladder sweeps, dimension studies and
// the built-in verification suite.
//
// Exit codes: 0 success, 2 configuration or I/O error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adiascale/config.hpp"
#include "adiascale/env.hpp"
#include "adiascale/errors.hpp"
#include "adiascale/report.hpp"
#include "adiascale/sweep.hpp"
#include "adiascale/verify.hpp"

namespace fs = std::filesystem;
using namespace adiascale;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

const std::set<ReportFormat> kAllFormats{ReportFormat::csv, ReportFormat::jsonl, ReportFormat::plotdata};

std::string describe_point(const TraversalRecord& r) {
    std::string line = "[" + std::to_string(r.index) + "] T_end=" + format_double(r.t_end);
    if (!r.ok) return line + " failed: " + r.failure;
    line += " L=" + format_double(r.length) + " s_c=" + format_double(r.s_c) + " eps=" + format_double(r.epsilon);
    for (const auto& [v, x] : r.qd_over_l) line += " Q_" + to_string(v) + "/L=" + format_double(x);
    return line;
}

void print_fits(const ScalingSeries& series) {
    for (const auto& [v, f] : series.fits) {
        std::cout << to_string(v) << ": Q_D/L = " << format_double(f.a) << " log L + " << format_double(f.b)
                  << "  stderr(a)=" << format_double(f.stderr_a) << "  verdict "
                  << (f.superlinear() ? "superlinear" : "not superlinear") << '\n';
    }
}

struct SweepRun {
    SweepConfig config;
    ScalingSeries series;
    fs::path out;
};

// Shared by `sweep` and `proxies`: records are appended to records.jsonl as
// they finish so that an interrupted run can be resumed.
SweepRun run_configured_sweep(const fs::path& config_file, const std::string& out_override, bool resume,
                              bool all_variants) {
    SweepRun run;
    run.config = load_sweep_config(config_file);
    if (all_variants) run.config.variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
    run.config.validate();
    run.out = out_override.empty() ? fs::path(run.config.output_dir) : fs::path(out_override);
    if (run.out.is_relative() && out_override.empty()) run.out = config_file.parent_path() / run.out;

    const std::string hash = config_hash(run.config);
    const fs::path progress = run.out / "records.jsonl";
    SweepHooks hooks;
    hooks.threads = thread_count();
    hooks.base_dir = config_file.parent_path();

    if (resume && fs::exists(progress)) {
        const nlohmann::json manifest = read_manifest(run.out);
        if (manifest.value("config_hash", std::string()) != hash) {
            throw std::invalid_argument("resume: " + run.out.string() + " was produced by a different configuration");
        }
        hooks.resume = read_records_jsonl(progress);
        std::cerr << "resuming after " << hooks.resume.size() << " persisted ladder points\n";
    } else {
        fs::create_directories(run.out);
        std::ofstream(progress, std::ios::trunc);
        std::ofstream(run.out / "timings.csv", std::ios::trunc) << "index,t_end,wall_time_s\n";
    }
    // Rewrite in canonical form: a torn trailing line from a crash is dropped.
    {
        std::ofstream out(progress, std::ios::trunc);
        for (const auto& r : hooks.resume) out << record_to_json(r).dump() << '\n';
    }
    write_manifest(run.out, to_json(run.config), hash, {});

    hooks.on_record = [&](const TraversalRecord& r) {
        append_record_jsonl(r, progress);
        std::ofstream(run.out / "timings.csv", std::ios::app)
            << r.index << ',' << format_double(r.t_end) << ',' << format_double(r.wall_time) << '\n';
        std::cerr << describe_point(r) << '\n';
    };

    run.series = run_sweep(run.config, hooks);
    emit_report(run.series, run.config, run.out, kAllFormats);
    return run;
}

std::vector<int> default_dims() { return {2, 4, 8, 16, 32, 64}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adiabatic traversal cost and path-length scaling experiments"};
    app.require_subcommand(1);

    std::string config_file;
    std::string out_dir;
    bool resume = false;
    auto* sweep = app.add_subcommand("sweep", "Run a ladder sweep described by a config file");
    sweep->add_option("--config", config_file, "Sweep configuration (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "Output directory (overrides the config)");
    sweep->add_flag("--resume", resume, "Continue from records already in the output directory");

    std::vector<int> dims = default_dims();
    int samples = 100;
    double t_end = 10.0;
    std::uint64_t seed = 0;
    std::string dim_out = "dim_study";
    auto* dim = app.add_subcommand("dim-study", "Mean path length against Hilbert-space dimension");
    dim->add_option("--dims", dims, "Dimensions")->delimiter(',')->check(CLI::Range(2, 1 << 20));
    dim->add_option("--samples", samples, "Random paths per dimension")->check(CLI::Range(2, 1 << 30));
    dim->add_option("--t-end", t_end, "End time")->check(CLI::NonNegativeNumber);
    dim->add_option("--seed", seed, "Base seed");
    dim->add_option("--out", dim_out, "Output directory");

    std::string proxies_config;
    std::string proxies_out;
    auto* proxies = app.add_subcommand("proxies", "Sweep one path and compare every Q_D variant");
    proxies->add_option("--config", proxies_config, "Sweep configuration (JSON)")->required()->check(CLI::ExistingFile);
    proxies->add_option("--out", proxies_out, "Output directory (overrides the config)");

    auto* verify = app.add_subcommand("verify", "Run the oracle and invariant self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*sweep) {
            const SweepRun run = run_configured_sweep(config_file, out_dir, resume, false);
            print_fits(run.series);
            std::cout << "outputs in " << run.out.string() << '\n';
        } else if (*dim) {
            DimStudyOptions opts;
            opts.threads = thread_count();
            opts.log = [](const std::string& msg) { std::cerr << msg << '\n'; };
            const DimStudyTable table = dim_study(dims, samples, t_end, seed, opts);
            for (const auto& r : table.rows) {
                std::cout << "dim " << r.dimension << ": mean L = " << format_double(r.mean_length)
                          << "  std = " << format_double(r.std_length) << '\n';
            }
            if (table.log_fit && table.linear_fit) {
                std::cout << "log fit residual " << format_double(table.log_fit->residual) << ", linear fit residual "
                          << format_double(table.linear_fit->residual) << '\n';
            }
            emit_report(table, dim_out, kAllFormats);
            std::cout << "outputs in " << dim_out << '\n';
        } else if (*proxies) {
            const SweepRun run = run_configured_sweep(proxies_config, proxies_out, false, true);
            print_fits(run.series);
            const auto& fits = run.series.fits;
            for (auto i = fits.begin(); i != fits.end(); ++i) {
                for (auto j = std::next(i); j != fits.end(); ++j) {
                    std::cout << "slope ratio " << to_string(i->first) << "/" << to_string(j->first) << " = "
                              << format_double(i->second.a / j->second.a) << '\n';
                }
            }
            std::cout << "outputs in " << run.out.string() << '\n';
        } else if (*verify) {
            bool all = true;
            for (const auto& c : run_verification()) {
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
                all = all && c.passed;
            }
            return all ? 0 : kNumericalError;
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return 0;
}
