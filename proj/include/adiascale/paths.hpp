// paths.hpp - Hamiltonian paths H(t) with analytic time derivatives.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adiascale/spectral.hpp"

namespace adiascale {

enum class PathKind { random_trig, translation, constant, file };

std::string to_string(PathKind kind);

enum class CoefficientFunction { sin, cos, polynomial };

std::string to_string(CoefficientFunction f);

// One scalar coefficient multiplying matrices[target]:
//   sin:        amplitude * sin(frequency * t)
//   cos:        amplitude * cos(frequency * t)
//   polynomial: sum_n coefficients[n] * t^n
struct CoefficientTerm {
    std::size_t target = 0;  // zero-based index into the matrix list
    CoefficientFunction function = CoefficientFunction::sin;
    double amplitude = 1.0;
    double frequency = 1.0;
    std::vector<double> coefficients;

    double value(double t) const;
    double rate(double t) const;
};

// H(t) = sum_terms term(t) * matrices[term.target]
struct SeriesModel {
    std::vector<Matrix> matrices;
    std::vector<CoefficientTerm> terms;
};

// H(t) = G(t) H0 G(t)^T with G(t) = exp(omega * t * K), K antisymmetric and
// omega = v / ||K g0||. Isospectral; the ground state moves at speed v.
struct TranslationModel {
    Matrix h0;
    Matrix generator;
    double v = 0.0;
    double omega = 0.0;
    // i*K = W diag(mu) W^dagger, used to form G(t) without re-decomposing.
    ComplexMatrix modes;
    Vector mode_frequencies;
};

using PathModel = std::variant<SeriesModel, TranslationModel>;

struct PathMetadata {
    PathKind kind = PathKind::file;
    std::optional<std::uint64_t> seed;
    std::string description;
};

// Immutable, cheap to copy; evaluation is pure and thread safe.
class HamiltonianPath {
public:
    HamiltonianPath(PathModel model, PathMetadata metadata);

    Eigen::Index dimension() const { return dimension_; }
    PathKind kind() const { return metadata_.kind; }
    const PathMetadata& metadata() const { return metadata_; }
    const PathModel& model() const { return *model_; }
    // Overall multiplier applied to the model (1 unless built by scaled()).
    double scale() const { return scale_; }

    Matrix evaluate(double t) const;
    Matrix derivative(double t) const;
    // Allocation-free variant for propagation loops; `out` must be d x d.
    void evaluate_into(double t, Matrix& out) const;

    // Path alpha * H(t), sharing the underlying model.
    HamiltonianPath scaled(double alpha) const;

    // Stable key identifying the path's content (model, metadata, scale);
    // used for caching error evaluations.
    const std::string& identity() const { return identity_; }

private:
    std::shared_ptr<const PathModel> model_;
    PathMetadata metadata_;
    double scale_ = 1.0;
    Eigen::Index dimension_ = 0;
    std::string identity_;

    void compute_identity();
};

// H(t) = (2.1 sin t + sin(sqrt2 t)) H1 + (2.7 cos t + cos(sqrt2 t)) H2 with
// H1, H2 drawn (in that order) by random_symmetric from NormalSource(seed).
HamiltonianPath make_random_trig_path(std::uint64_t seed, Eigen::Index d);

// Same form with caller-supplied H1, H2.
HamiltonianPath make_random_trig_path(const Matrix& h1, const Matrix& h2);

// Isospectral translation path. `generator` must be real antisymmetric; the
// ground state g0 of h0 must satisfy ||K g0|| > 0 (and <g0|iK|g0> = 0, which
// holds identically for real g0). v > 0.
HamiltonianPath make_translation_path(const Matrix& h0, const Matrix& generator, double v);

// Seeded translation path: H0 = random_symmetric, K = random_antisymmetric,
// both from NormalSource(seed).
HamiltonianPath make_translation_path(std::uint64_t seed, Eigen::Index d, double v);

HamiltonianPath make_constant_path(const Matrix& h0);

// Generic series path (used by the file loader).
HamiltonianPath make_series_path(SeriesModel model, PathMetadata metadata);

}  // namespace adiascale
