#include "adiascale/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adiascale {

double NormalSource::uniform() {
    // 53 random bits mapped to (0, 1); zero is excluded for the logarithm.
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double NormalSource::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

Matrix random_symmetric(Eigen::Index d, NormalSource& rng) {
    if (d < 2) throw std::invalid_argument("random_symmetric: dimension must be at least 2");
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            m(i, j) = rng.normal();
            m(j, i) = m(i, j);
        }
    }
    return m;
}

Matrix random_antisymmetric(Eigen::Index d, NormalSource& rng) {
    if (d < 2) throw std::invalid_argument("random_antisymmetric: dimension must be at least 2");
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            m(i, j) = rng.normal();
            m(j, i) = -m(i, j);
        }
    }
    return m;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // std::seed_seq::generate is fully specified by the standard.
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(c)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace adiascale
