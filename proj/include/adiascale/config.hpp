// config.hpp - sweep configuration and its JSON file format.
//
//   {
//     "format": "adiascale-sweep/1",
//     "path": {"kind": "random-trig", "seed": 5, "dimension": 4}
//           | {"kind": "translation", "seed": 3, "dimension": 4, "v": 0.05}
//           | {"kind": "file", "file": "path.json"},
//     "epsilon_th": 0.1,            threshold error, in (0, 1)
//     "t0": 10,                     first ladder end time
//     "k": 1.5,                     ladder factor, > 1
//     "kappa": 2,                   restart factor for s_start, > 1
//     "ladder_points": 8,
//     "variants": ["D1", "D2", "Dhalf"],
//     "s_start": 10,                initial scale factor guess
//     "gamma": 0.9,                 downward scan factor, in (0, 1)
//     "search_tolerance": 0,        |eps - eps_th| acceptance (<= 0: 1% of eps_th)
//     "integrator_tolerance": 0.001, relative step-halving tolerance
//     "quadrature_tolerance": 1e-6, relative grid-doubling tolerance
//     "output_dir": "out",
//     "run_seed": 0                 default path seed when path.seed is absent
//   }
//
// Every key except "path" is optional (defaults above); unknown keys are
// rejected.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "adiascale/geometry.hpp"
#include "adiascale/paths.hpp"

namespace adiascale {

inline constexpr const char* kSweepFormat = "adiascale-sweep/1";

struct PathSpec {
    PathKind kind = PathKind::random_trig;
    std::optional<std::uint64_t> seed;
    Eigen::Index dimension = 4;
    double v = 0.05;   // translation only
    std::string file;  // file only
};

struct SweepConfig {
    PathSpec path;
    double epsilon_th = 0.1;
    double t0 = 10.0;
    double k = 1.5;
    double kappa = 2.0;
    int ladder_points = 8;
    std::vector<ProxyVariant> variants{ProxyVariant::d1, ProxyVariant::d2, ProxyVariant::dhalf};
    double s_start = 10.0;
    double gamma = 0.9;
    double search_tolerance = 0.0;
    double integrator_tolerance = 1e-3;
    double quadrature_tolerance = 1e-6;
    std::string output_dir = "out";
    std::uint64_t run_seed = 0;

    // Throws std::invalid_argument naming the first illegal field.
    void validate() const;
    // Builds the path; relative file paths resolve against `base_dir`.
    HamiltonianPath build_path(const std::filesystem::path& base_dir = {}) const;
};

nlohmann::json to_json(const SweepConfig& config);
// Strict: unknown keys and wrong types throw std::invalid_argument.
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
SweepConfig load_sweep_config(const std::filesystem::path& file);

// Hex digest of the canonical JSON form; changes iff the config changes.
std::string config_hash(const SweepConfig& config);

}  // namespace adiascale
