// rng.hpp - the repository's fixed random source.
//
// Generator: std::mt19937_64 (its output sequence is fixed by the C++
// standard). Normal deviates come from our own Box-Muller transform on
// 53-bit uniforms, because std::normal_distribution is implementation
// defined. Together this makes seeded ensembles bit-reproducible across
// toolchains.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "adiascale/spectral.hpp"

namespace adiascale {

inline constexpr std::string_view kGeneratorIdentity = "mt19937_64/box-muller-53bit/v1";

class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1).
    double uniform();
    // Standard normal N(0, 1).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Symmetric matrix with the upper triangle (diagonal included) iid N(0,1)
// in row-major order, mirrored below.
Matrix random_symmetric(Eigen::Index d, NormalSource& rng);

// Antisymmetric matrix with the strict upper triangle iid N(0,1), negated
// below; zero diagonal.
Matrix random_antisymmetric(Eigen::Index d, NormalSource& rng);

// Deterministic child seed for ensemble member `index` of a study.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

}  // namespace adiascale
