#pragma once

#include <stdexcept>
#include <string>

namespace adiascale {

// Raised for numerical breakdowns (as opposed to bad input, which uses
// std::invalid_argument). The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A spectrum whose ground-state gap (or any adjacent gap) is too small for
// the perturbative tangent to be defined.
class DegenerateSpectrum : public NumericalError {
public:
    DegenerateSpectrum(const std::string& what, double gap)
        : NumericalError(what), gap_(gap) {}
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

// Eigenvector overlap between neighbouring points dropped below the
// continuity threshold; the caller should refine its step.
class AlignmentError : public NumericalError {
public:
    AlignmentError(const std::string& what, double overlap)
        : NumericalError(what), overlap_(overlap) {}
    double overlap() const noexcept { return overlap_; }

private:
    double overlap_;
};

}  // namespace adiascale
