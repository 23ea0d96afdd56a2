// path_io.hpp - JSON path files.
//
// Schema (all keys required unless marked optional; unknown keys rejected):
//
//   {
//     "format": "adiascale-path/1",
//     "kind": "series" | "translation",
//     "dimension": d,
//     "seed": <uint64>,                         optional, informational
//     "generator_identity": "<rng id>",         optional, informational
//     "matrices": [ M_1, M_2, ... ],            each M is d rows of d numbers
//     "terms": [                                series only
//        {"target": 1, "function": "sin", "amplitude": a, "frequency": w},
//        {"target": 2, "function": "cos", "amplitude": a, "frequency": w},
//        {"target": 1, "function": "polynomial", "coefficients": [c0, c1, ...]}
//     ],
//     "v": <positive>,                          translation only
//     "generator": K                            translation only, antisymmetric
//   }
//
// A series path is H(t) = sum_terms term(t) * M_target (targets are
// 1-based). A translation path takes matrices = [H0].
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "adiascale/paths.hpp"

namespace adiascale {

inline constexpr const char* kPathFormat = "adiascale-path/1";

// Throws std::invalid_argument describing the first problem found.
HamiltonianPath load_path_from_file(const std::filesystem::path& file);
HamiltonianPath parse_path(const std::string& json_text);

// Writes a file load_path_from_file reproduces exactly.
std::string serialize_path(const HamiltonianPath& path);
void save_path(const HamiltonianPath& path, const std::filesystem::path& file);

}  // namespace adiascale
