// spectral.hpp - dense real-symmetric eigensystems and spectral calculus.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

#include "adiascale/errors.hpp"

namespace adiascale {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Adjacent eigenvalues closer than this mark a spectrum as degenerate.
inline constexpr double kDegeneracyThreshold = 1e-10;
// Minimum |overlap| accepted by align_signs.
inline constexpr double kMinAlignmentOverlap = 0.1;

struct Spectrum {
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // column k pairs with eigenvalues(k)
    bool degenerate = false;

    Eigen::Index dimension() const { return eigenvalues.size(); }
    double gap() const { return eigenvalues(1) - eigenvalues(0); }
    // Smallest difference between neighbouring eigenvalues.
    double min_adjacent_gap() const;
    const Eigen::Ref<const Vector> ground_state() const { return eigenvectors.col(0); }
};

// Full eigendecomposition of a real symmetric matrix. Each eigenvector is
// sign-fixed so that its largest-magnitude component is positive.
// Throws std::invalid_argument for non-square, d < 2, non-finite or
// non-symmetric input.
Spectrum eigh(const Matrix& h);

// Returns `current` with every eigenvector flipped to have non-negative
// overlap with the matching column of `previous`. Throws AlignmentError if an
// overlap magnitude is below kMinAlignmentOverlap.
Spectrum align_signs(const Spectrum& previous, const Spectrum& current);

// Reusable eigensolver for hot loops that only need V and E (no sign fixing,
// no validation). Propagators use this.
class EigenWorkspace {
public:
    explicit EigenWorkspace(Eigen::Index dimension) : solver_(dimension) {}

    void decompose(const Matrix& h) { solver_.compute(h, Eigen::ComputeEigenvectors); }
    const Vector& eigenvalues() const { return solver_.eigenvalues(); }
    const Matrix& eigenvectors() const { return solver_.eigenvectors(); }

private:
    Eigen::SelfAdjointEigenSolver<Matrix> solver_;
};

// V diag(f(E)) V^T. Throws std::domain_error if f is not finite on the
// spectrum.
template <class F>
Matrix matrix_function(const Spectrum& spec, F&& f) {
    const Eigen::Index d = spec.dimension();
    Vector values(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        values(k) = f(spec.eigenvalues(k));
        if (!std::isfinite(values(k))) {
            throw std::domain_error("matrix_function: f undefined at eigenvalue " +
                                    std::to_string(spec.eigenvalues(k)));
        }
    }
    Matrix out = spec.eigenvectors * values.asDiagonal() * spec.eigenvectors.transpose();
    return 0.5 * (out + out.transpose());
}

// Square root that tolerates round-off negatives (down to -1e-12, clamped to
// zero) and returns NaN below that so matrix_function reports a domain error.
inline double clamped_sqrt(double x) {
    if (x >= 0.0) return std::sqrt(x);
    if (x >= -1e-12) return 0.0;
    return std::nan("");
}

// Throws std::invalid_argument unless h is square, finite and symmetric to
// 1e-12 (element-wise, relative to the largest entry magnitude).
void require_symmetric(const Matrix& h, const std::string& what);

}  // namespace adiascale
