#include "adiascale/paths.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "adiascale/rng.hpp"

namespace adiascale {

std::string to_string(PathKind kind) {
    switch (kind) {
        case PathKind::random_trig: return "random-trig";
        case PathKind::translation: return "translation";
        case PathKind::constant: return "constant";
        case PathKind::file: return "file";
    }
    return "unknown";
}

std::string to_string(CoefficientFunction f) {
    switch (f) {
        case CoefficientFunction::sin: return "sin";
        case CoefficientFunction::cos: return "cos";
        case CoefficientFunction::polynomial: return "polynomial";
    }
    return "unknown";
}

double CoefficientTerm::value(double t) const {
    switch (function) {
        case CoefficientFunction::sin: return amplitude * std::sin(frequency * t);
        case CoefficientFunction::cos: return amplitude * std::cos(frequency * t);
        case CoefficientFunction::polynomial: {
            double acc = 0.0;
            for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
            return acc;
        }
    }
    return 0.0;
}

double CoefficientTerm::rate(double t) const {
    switch (function) {
        case CoefficientFunction::sin: return amplitude * frequency * std::cos(frequency * t);
        case CoefficientFunction::cos: return -amplitude * frequency * std::sin(frequency * t);
        case CoefficientFunction::polynomial: {
            double acc = 0.0;
            for (std::size_t n = coefficients.size(); n-- > 1;) {
                acc = acc * t + static_cast<double>(n) * coefficients[n];
            }
            return acc;
        }
    }
    return 0.0;
}

namespace {

Eigen::Index model_dimension(const PathModel& model) {
    return std::visit(
        [](const auto& m) -> Eigen::Index {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SeriesModel>) {
                return m.matrices.empty() ? 0 : m.matrices.front().rows();
            } else {
                return m.h0.rows();
            }
        },
        model);
}

Matrix rotation(const TranslationModel& m, double t) {
    const Eigen::Index d = m.h0.rows();
    if (t == 0.0) return Matrix::Identity(d, d);
    ComplexVector phases(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        phases(k) = std::polar(1.0, -m.omega * t * m.mode_frequencies(k));
    }
    return (m.modes * phases.asDiagonal() * m.modes.adjoint()).real();
}

void evaluate_series(const SeriesModel& m, double t, Matrix& out, bool rate) {
    std::vector<double> coef(m.matrices.size(), 0.0);
    for (const auto& term : m.terms) coef[term.target] += rate ? term.rate(t) : term.value(t);
    out.setZero();
    for (std::size_t i = 0; i < coef.size(); ++i) {
        if (coef[i] != 0.0) out.noalias() += coef[i] * m.matrices[i];
    }
}

void hash_bytes(std::string& sink, const void* data, std::size_t n) {
    sink.append(static_cast<const char*>(data), n);
}

}  // namespace

HamiltonianPath::HamiltonianPath(PathModel model, PathMetadata metadata)
    : model_(std::make_shared<const PathModel>(std::move(model))),
      metadata_(std::move(metadata)),
      dimension_(model_dimension(*model_)) {
    if (dimension_ < 2) throw std::invalid_argument("HamiltonianPath: dimension must be at least 2");
    compute_identity();
}

void HamiltonianPath::evaluate_into(double t, Matrix& out) const {
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SeriesModel>) {
                evaluate_series(m, t, out, false);
            } else {
                const Matrix g = rotation(m, t);
                const Matrix h = g * m.h0 * g.transpose();
                out = 0.5 * (h + h.transpose());
            }
        },
        *model_);
    if (scale_ != 1.0) out *= scale_;
}

Matrix HamiltonianPath::evaluate(double t) const {
    Matrix out(dimension_, dimension_);
    evaluate_into(t, out);
    return out;
}

Matrix HamiltonianPath::derivative(double t) const {
    Matrix out(dimension_, dimension_);
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SeriesModel>) {
                evaluate_series(m, t, out, true);
            } else {
                // dH/dt = omega [K, H]
                const Matrix g = rotation(m, t);
                Matrix h = g * m.h0 * g.transpose();
                h = 0.5 * (h + h.transpose());
                const Matrix c = m.omega * (m.generator * h - h * m.generator);
                out = 0.5 * (c + c.transpose());
            }
        },
        *model_);
    if (scale_ != 1.0) out *= scale_;
    return out;
}

HamiltonianPath HamiltonianPath::scaled(double alpha) const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("HamiltonianPath::scaled: alpha must be positive and finite");
    }
    HamiltonianPath copy = *this;
    copy.scale_ = scale_ * alpha;
    copy.compute_identity();
    return copy;
}

void HamiltonianPath::compute_identity() {
    std::string bytes;
    const auto add_matrix = [&](const Matrix& m) {
        hash_bytes(bytes, m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
    };
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SeriesModel>) {
                bytes += "series";
                for (const auto& mat : m.matrices) add_matrix(mat);
                for (const auto& term : m.terms) {
                    bytes += to_string(term.function);
                    hash_bytes(bytes, &term.target, sizeof(term.target));
                    hash_bytes(bytes, &term.amplitude, sizeof(double));
                    hash_bytes(bytes, &term.frequency, sizeof(double));
                    for (double c : term.coefficients) hash_bytes(bytes, &c, sizeof(double));
                }
            } else {
                bytes += "translation";
                add_matrix(m.h0);
                add_matrix(m.generator);
                hash_bytes(bytes, &m.v, sizeof(double));
            }
        },
        *model_);
    std::ostringstream id;
    id << to_string(metadata_.kind) << ":d" << dimension_;
    if (metadata_.seed) id << ":seed" << *metadata_.seed;
    id << ":scale" << std::hexfloat << scale_ << std::dec << ":" << std::hex
       << std::hash<std::string_view>{}(bytes);
    identity_ = id.str();
}

HamiltonianPath make_random_trig_path(const Matrix& h1, const Matrix& h2) {
    require_symmetric(h1, "make_random_trig_path(H1)");
    require_symmetric(h2, "make_random_trig_path(H2)");
    if (h1.rows() != h2.rows()) throw std::invalid_argument("make_random_trig_path: dimension mismatch");
    const double root2 = std::numbers::sqrt2;
    SeriesModel model;
    model.matrices = {h1, h2};
    model.terms = {
        {0, CoefficientFunction::sin, 2.1, 1.0, {}},
        {0, CoefficientFunction::sin, 1.0, root2, {}},
        {1, CoefficientFunction::cos, 2.7, 1.0, {}},
        {1, CoefficientFunction::cos, 1.0, root2, {}},
    };
    return HamiltonianPath(std::move(model), {PathKind::random_trig, std::nullopt, "random-trig"});
}

HamiltonianPath make_random_trig_path(std::uint64_t seed, Eigen::Index d) {
    NormalSource rng(seed);
    const Matrix h1 = random_symmetric(d, rng);
    const Matrix h2 = random_symmetric(d, rng);
    SeriesModel model = std::get<SeriesModel>(make_random_trig_path(h1, h2).model());
    return HamiltonianPath(std::move(model), {PathKind::random_trig, seed, "random-trig"});
}

HamiltonianPath make_translation_path(const Matrix& h0, const Matrix& generator, double v) {
    require_symmetric(h0, "make_translation_path(H0)");
    if (generator.rows() != h0.rows() || generator.cols() != h0.cols()) {
        throw std::invalid_argument("make_translation_path: generator dimension mismatch");
    }
    if (!generator.allFinite() || (generator + generator.transpose()).cwiseAbs().maxCoeff() >
                                      1e-12 * std::max(1.0, generator.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("make_translation_path: generator must be real antisymmetric");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("make_translation_path: v must be positive");
    }
    const Spectrum s0 = eigh(h0);
    if (s0.gap() < kDegeneracyThreshold) {
        throw DegenerateSpectrum("make_translation_path: H0 ground state is degenerate", s0.gap());
    }
    const Vector g0 = s0.ground_state();
    // <g0|A|g0> for the Hermitian A = iK; zero for real g0 up to round-off.
    const double mean = std::abs(g0.dot(generator * g0));
    if (mean > 1e-10) {
        throw std::invalid_argument("make_translation_path: <g0|A|g0> = " + std::to_string(mean) +
                                    " (must vanish)");
    }
    const double spread = (generator * g0).norm();  // sqrt(<g0|A^2|g0>)
    if (!(spread > 1e-12)) {
        throw std::invalid_argument("make_translation_path: <g0|A^2|g0> must be positive");
    }

    TranslationModel model;
    model.h0 = 0.5 * (h0 + h0.transpose());
    model.generator = 0.5 * (generator - generator.transpose());
    model.v = v;
    model.omega = v / spread;
    const ComplexMatrix hermitian = std::complex<double>(0.0, 1.0) * model.generator.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
    model.modes = solver.eigenvectors();
    model.mode_frequencies = solver.eigenvalues();
    return HamiltonianPath(std::move(model), {PathKind::translation, std::nullopt, "translation"});
}

HamiltonianPath make_translation_path(std::uint64_t seed, Eigen::Index d, double v) {
    NormalSource rng(seed);
    const Matrix h0 = random_symmetric(d, rng);
    const Matrix k = random_antisymmetric(d, rng);
    TranslationModel model = std::get<TranslationModel>(make_translation_path(h0, k, v).model());
    return HamiltonianPath(std::move(model), {PathKind::translation, seed, "translation"});
}

HamiltonianPath make_constant_path(const Matrix& h0) {
    require_symmetric(h0, "make_constant_path");
    SeriesModel model;
    model.matrices = {0.5 * (h0 + h0.transpose())};
    model.terms = {{0, CoefficientFunction::polynomial, 1.0, 0.0, {1.0}}};
    return HamiltonianPath(std::move(model), {PathKind::constant, std::nullopt, "constant"});
}

HamiltonianPath make_series_path(SeriesModel model, PathMetadata metadata) {
    if (model.matrices.empty()) throw std::invalid_argument("series path: no matrices");
    const Eigen::Index d = model.matrices.front().rows();
    for (const auto& m : model.matrices) {
        if (m.rows() != d || m.cols() != d) throw std::invalid_argument("series path: dimension mismatch");
        require_symmetric(m, "series path");
    }
    for (const auto& term : model.terms) {
        if (term.target >= model.matrices.size()) {
            throw std::invalid_argument("series path: term target out of range");
        }
    }
    return HamiltonianPath(std::move(model), std::move(metadata));
}

}  // namespace adiascale
