#include "adiascale/spectral.hpp"

#include <algorithm>
#include <sstream>

namespace adiascale {

double Spectrum::min_adjacent_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k < eigenvalues.size(); ++k) {
        g = std::min(g, eigenvalues(k) - eigenvalues(k - 1));
    }
    return g;
}

void require_symmetric(const Matrix& h, const std::string& what) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument(what + ": matrix must be square");
    }
    if (!h.allFinite()) {
        throw std::invalid_argument(what + ": matrix has non-finite entries");
    }
    const double scale = h.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < h.cols(); ++j) {
            const double a = h(i, j);
            const double b = h(j, i);
            if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), scale})) {
                std::ostringstream msg;
                msg.precision(17);
                msg << what << ": matrix not symmetric at (" << i << "," << j << "): " << a
                    << " vs " << b;
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

Spectrum eigh(const Matrix& h) {
    require_symmetric(h, "eigh");
    if (h.rows() < 2) {
        throw std::invalid_argument("eigh: dimension must be at least 2");
    }
    const Matrix sym = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigh: eigendecomposition did not converge");
    }

    Spectrum out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
        Eigen::Index imax = 0;
        out.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
        if (out.eigenvectors(imax, k) < 0.0) out.eigenvectors.col(k) *= -1.0;
    }
    out.degenerate = out.min_adjacent_gap() < kDegeneracyThreshold;
    return out;
}

Spectrum align_signs(const Spectrum& previous, const Spectrum& current) {
    if (previous.dimension() != current.dimension()) {
        throw std::invalid_argument("align_signs: dimension mismatch");
    }
    Spectrum out = current;
    for (Eigen::Index k = 0; k < out.dimension(); ++k) {
        const double overlap = previous.eigenvectors.col(k).dot(out.eigenvectors.col(k));
        if (std::abs(overlap) < kMinAlignmentOverlap) {
            throw AlignmentError("align_signs: overlap " + std::to_string(overlap) +
                                     " for level " + std::to_string(k) +
                                     " (step too large or level crossing)",
                                 overlap);
        }
        if (overlap < 0.0) out.eigenvectors.col(k) *= -1.0;
    }
    return out;
}

}  // namespace adiascale
