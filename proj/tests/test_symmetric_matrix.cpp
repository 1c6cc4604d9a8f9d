#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slag/errors.hpp"
#include "slag/symmetric_matrix.hpp"
#include "test_util.hpp"

using namespace slag;
using slagtest::kPi;

TEST_CASE("storage is exactly symmetric by construction") {
    SymmetricMatrix m(3);
    m.set(0, 2, 1.75);
    CHECK(m(2, 0) == 1.75);
    m.set(2, 0, -0.5);
    CHECK(m(0, 2) == -0.5);

    // from_dense averages the two triangles
    const SymmetricMatrix a = SymmetricMatrix::from_dense(2, {1.0, 3.0, 5.0, 2.0});
    CHECK(a(0, 1) == 4.0);
    CHECK(a(1, 0) == 4.0);
}

TEST_CASE("jacobi on a known 2x2") {
    SymmetricMatrix m(2);
    m.set(0, 0, 2.0);
    m.set(1, 1, 2.0);
    m.set(0, 1, 1.0);
    const EigenDecomposition e = jacobi_eigen(m);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.frame_orthogonality_error() <= 1e-12);
    CHECK(e.reconstruct().max_abs_diff(m) <= 1e-12);
}

TEST_CASE("jacobi leaves diagonal matrices alone and sorts descending") {
    const SymmetricMatrix m = SymmetricMatrix::diagonal({-1.0, 5.0, 2.0});
    const EigenDecomposition e = jacobi_eigen(m);
    CHECK(e.eigenvalues[0] == 5.0);
    CHECK(e.eigenvalues[1] == 2.0);
    CHECK(e.eigenvalues[2] == -1.0);
}

TEST_CASE("jacobi on random matrices, n = 2..8") {
    Rng rng(7);
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            SymmetricMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.uniform(-3.0, 3.0));
            const EigenDecomposition e = jacobi_eigen(m);
            CHECK(e.frame_orthogonality_error() <= 1e-12);
            CHECK(e.reconstruct().max_abs_diff(m) <= 1e-12 * std::max(1.0, m.max_abs()));
            for (std::size_t i = 0; i + 1 < n; ++i) CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
        }
    }
}

TEST_CASE("jacobi handles large scales") {
    SymmetricMatrix m(2);
    m.set(0, 0, 1e16);
    m.set(1, 1, 3.0);
    m.set(0, 1, 1e8);
    const EigenDecomposition e = jacobi_eigen(m);
    CHECK(e.eigenvalues[0] == doctest::Approx(1e16).epsilon(1e-12));
    CHECK(e.frame_orthogonality_error() <= 1e-12);
}

TEST_CASE("determinant and trace") {
    SymmetricMatrix m(2);
    m.set(0, 0, 2.0);
    m.set(1, 1, 0.5);
    m.set(0, 1, 0.25);
    CHECK(m.determinant() == doctest::Approx(1.0 - 0.0625).epsilon(1e-14));
    CHECK(m.trace() == 2.5);
}

TEST_CASE("spectrum sorts descending and rejects empty input") {
    const Spectrum s(std::vector<double>{0.5, -2.0, 3.0});
    CHECK(s[0] == 3.0);
    CHECK(s[1] == 0.5);
    CHECK(s[2] == -2.0);
    CHECK(s.top() == 3.0);
    CHECK(s.bottom() == -2.0);
    CHECK_THROWS_AS(Spectrum(std::vector<double>{}), InvalidInput);
}

TEST_CASE("conjugation by an orthogonal frame preserves the spectrum") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> lam = {2.5, -0.5, 0.25, 1.0};
        const SymmetricMatrix m = slagtest::matrix_with_eigenvalues(lam, rng);
        const Spectrum s = spectrum_of(m);
        CHECK(s[0] == doctest::Approx(2.5).epsilon(1e-12));
        CHECK(s[3] == doctest::Approx(-0.5).epsilon(1e-12));
    }
}
