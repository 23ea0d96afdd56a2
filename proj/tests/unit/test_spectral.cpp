#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adiascale/errors.hpp"
#include "adiascale/oracles.hpp"
#include "adiascale/rng.hpp"
#include "adiascale/spectral.hpp"

using namespace adiascale;

namespace {

Matrix random_rotation(Eigen::Index d, NormalSource& rng) {
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("diagonal input gives sorted eigenvalues and permutation vectors") {
    Matrix h = Matrix::Zero(3, 3);
    h.diagonal() << 3.0, 1.0, 2.0;
    const Spectrum s = eigh(h);
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(s.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(s.eigenvectors(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(s.eigenvectors(0, 2)) == doctest::Approx(1.0));
    // largest component positive
    for (int k = 0; k < 3; ++k) CHECK(s.eigenvectors.col(k).maxCoeff() == doctest::Approx(1.0));
    CHECK(s.gap() == doctest::Approx(1.0));
}

TEST_CASE("pauli x") {
    Matrix h(2, 2);
    h << 0.0, 1.0, 1.0, 0.0;
    const Spectrum s = eigh(h);
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.eigenvectors(0, 0) * s.eigenvectors(1, 0) + 0.5) < 1e-14);  // (1,-1)/sqrt2 up to sign
    CHECK(std::abs(s.eigenvectors(0, 1) - r) < 1e-14);
    CHECK(std::abs(s.eigenvectors(1, 1) - r) < 1e-14);
}

TEST_CASE("eigenvalues agree with characteristic polynomial roots") {
    NormalSource rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix h = random_symmetric(4, rng);
        const Spectrum s = eigh(h);
        const auto roots = oracles::characteristic_roots(h);
        REQUIRE(roots.size() == 4);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(roots[static_cast<std::size_t>(k)] - s.eigenvalues(k)) < 1e-8);
            CHECK(std::abs(oracles::characteristic_polynomial(h, s.eigenvalues(k))) < 1e-9 * (1.0 + std::pow(h.norm(), 4)));
        }
    }
}

TEST_CASE("decomposition invariants across dimensions") {
    NormalSource rng(7);
    for (Eigen::Index d : {2, 4, 8, 16, 32, 64}) {
        const Matrix h = random_symmetric(d, rng);
        const Spectrum s = eigh(h);
        CHECK_FALSE(s.degenerate);
        for (Eigen::Index k = 1; k < d; ++k) CHECK(s.eigenvalues(k) >= s.eigenvalues(k - 1));
        CHECK(max_abs(s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(d, d)) < 1e-12);
        const Matrix rebuilt = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
        CHECK((rebuilt - h).norm() <= 1e-10 * (1.0 + h.norm()));
    }
}

TEST_CASE("eigenvalues invariant under orthogonal conjugation") {
    NormalSource rng(8);
    for (Eigen::Index d : {3, 4, 10}) {
        const Matrix h = random_symmetric(d, rng);
        const Matrix q = random_rotation(d, rng);
        const Matrix rotated = q * h * q.transpose();
        const Vector a = eigh(h).eigenvalues;
        const Vector b = eigh(0.5 * (rotated + rotated.transpose())).eigenvalues;
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("degenerate spectra are flagged") {
    Matrix h = Matrix::Identity(3, 3);
    h(2, 2) = 2.0;
    const Spectrum s = eigh(h);
    CHECK(s.degenerate);
    CHECK(s.min_adjacent_gap() < 1e-10);
}

TEST_CASE("eigh rejects bad input") {
    Matrix h(2, 2);
    h << 1.0, 2.0, 2.5, 1.0;
    CHECK_THROWS_AS(eigh(h), std::invalid_argument);
    h << 1.0, NAN, NAN, 1.0;
    CHECK_THROWS_AS(eigh(h), std::invalid_argument);
    CHECK_THROWS_AS(eigh(Matrix::Zero(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(eigh(Matrix::Zero(1, 1)), std::invalid_argument);
}

TEST_CASE("sign alignment") {
    NormalSource rng(9);
    const Matrix h = random_symmetric(4, rng);
    const Spectrum s = eigh(h);

    SUBCASE("identity on equal spectra") {
        const Spectrum a = align_signs(s, s);
        CHECK(a.eigenvectors == s.eigenvectors);
        CHECK(a.eigenvalues == s.eigenvalues);
    }
    SUBCASE("undoes a sign flip and is idempotent") {
        Spectrum flipped = s;
        flipped.eigenvectors.col(2) *= -1.0;
        const Spectrum once = align_signs(s, flipped);
        CHECK(once.eigenvectors == s.eigenvectors);
        const Spectrum twice = align_signs(s, once);
        CHECK(twice.eigenvectors == once.eigenvectors);
    }
    SUBCASE("small step along a smooth path keeps overlaps near one") {
        const Matrix h2 = random_symmetric(4, rng);
        Spectrum prev = eigh(h);
        for (int i = 1; i <= 100; ++i) {
            const double t = 1e-4 * i;
            const Spectrum next = align_signs(prev, eigh(std::cos(t) * h + std::sin(t) * h2));
            for (int k = 0; k < 4; ++k) CHECK(prev.eigenvectors.col(k).dot(next.eigenvectors.col(k)) >= 0.999);
            prev = next;
        }
    }
    SUBCASE("level swap is reported") {
        Spectrum swapped = s;
        swapped.eigenvectors.col(0).swap(swapped.eigenvectors.col(1));
        CHECK_THROWS_AS(align_signs(s, swapped), AlignmentError);
    }
}

TEST_CASE("matrix functions") {
    NormalSource rng(10);
    const Matrix h = random_symmetric(4, rng);
    const Spectrum s = eigh(h);

    CHECK((matrix_function(s, [](double x) { return x; }) - h).norm() < 1e-10 * (1.0 + h.norm()));

    Matrix d = Matrix::Zero(2, 2);
    d(1, 1) = 4.0;
    const Matrix root = matrix_function(eigh(d), [](double x) { return clamped_sqrt(x); });
    CHECK(max_abs(root - Vector((Vector(2) << 0.0, 2.0).finished()).asDiagonal().toDenseMatrix()) < 1e-15);

    const Matrix e = matrix_function(s, [](double x) { return std::exp(x); });
    const Matrix taylor = oracles::taylor_exp(h);
    CHECK(max_abs(e - taylor) / max_abs(taylor) < 1e-9);

    const auto f = [](double x) { return std::sin(x) + 2.0; };
    const auto g = [](double x) { return x * x * x; };
    const Matrix product = matrix_function(s, f) * matrix_function(s, g);
    const Matrix direct = matrix_function(s, [&](double x) { return f(x) * g(x); });
    CHECK(max_abs(product - direct) < 1e-9 * (1.0 + max_abs(direct)));

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = -1.0;
    neg(1, 1) = 1.0;
    CHECK_THROWS_AS(matrix_function(eigh(neg), [](double x) { return clamped_sqrt(x); }), std::domain_error);
    CHECK(clamped_sqrt(-1e-13) == 0.0);
}

TEST_CASE("taylor oracle agrees with a closed form") {
    Matrix a(2, 2);
    a << 0.0, 3.0, -3.0, 0.0;
    const Matrix e = oracles::taylor_exp(a);
    CHECK(std::abs(e(0, 0) - std::cos(3.0)) < 1e-13);
    CHECK(std::abs(e(0, 1) - std::sin(3.0)) < 1e-13);
}

TEST_CASE("workspace matches eigh") {
    NormalSource rng(11);
    const Matrix h = random_symmetric(6, rng);
    EigenWorkspace ws(6);
    ws.decompose(h);
    CHECK((ws.eigenvalues() - eigh(h).eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
}
