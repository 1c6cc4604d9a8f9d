#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slag/errors.hpp"
#include "slag/phase.hpp"
#include "slag/sl_operator.hpp"
#include "test_util.hpp"

using namespace slag;
using slagtest::kPi;

// ===========================================================================
// classification
// ===========================================================================

TEST_CASE("phase classification") {
    CHECK(classify_phase(3, kPi / 2) == PhaseClass::Critical);
    CHECK(classify_phase(4, 3 * kPi / 2) == PhaseClass::Supercritical);
    CHECK(classify_phase(5, kPi / 2) == PhaseClass::Subcritical);
    CHECK_THROWS_AS(classify_phase(3, 3 * kPi / 2 + 0.1), InvalidInput);
    CHECK_THROWS_AS(classify_phase(2, -kPi), InvalidInput);
}

// ===========================================================================
// derived parameters
// ===========================================================================

TEST_CASE("derive_phase_params at n = 3, Theta = 0") {
    const PhaseParams p = derive_phase_params(3, 0.0);
    CHECK(p.theta == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(p.delta == doctest::Approx(kPi / 24).epsilon(1e-15));
    CHECK(p.phi == doctest::Approx(5 * kPi / 24).epsilon(1e-15));
    CHECK(p.rotated_phase() == doctest::Approx(-5 * kPi / 8).epsilon(1e-15));
    // both routes to the rotated phase agree
    const double alt = -(p.n - 2) * kPi / 2 - p.n * p.delta;
    CHECK(std::abs(p.rotated_phase() - alt) <= 1e-12);
}

TEST_CASE("theta -> 0+ as Theta -> pi/2-") {
    const PhaseParams p = derive_phase_params(4, kPi / 2 - 1e-9);
    CHECK(p.theta > 0.0);
    CHECK(p.theta < 1e-9);
}

TEST_CASE("regime validation") {
    CHECK_THROWS_AS(derive_phase_params(3, 2.0), InvalidInput);
    CHECK_THROWS_AS(derive_phase_params(3, -kPi / 2 - 0.01), InvalidInput);
    CHECK_THROWS_AS(derive_phase_params(2, 0.0), InvalidInput);
    CHECK_NOTHROW(derive_phase_params(2, kPi / 4));
    CHECK_NOTHROW(derive_phase_params(4, -1.0));
}

TEST_CASE("rotated phase identity over a parameter grid") {
    int checked = 0;
    for (int n = 3; n <= 7; ++n) {
        const double lo = -(n - 2) * kPi / 2;
        const double hi = kPi / 2;
        for (int j = 1; j <= 20; ++j) {
            const double theta = lo + (hi - lo) * j / 21.0;
            const PhaseParams p = derive_phase_params(n, theta);
            const double lhs = p.rotated_phase();
            const double rhs = -(n - 2) * kPi / 2 - n * p.delta;
            CHECK(std::abs(lhs - rhs) <= 1e-12);
            CHECK(p.phi > 0.0);
            CHECK(p.phi < kPi / 2 - p.theta);
            ++checked;
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("custom rotation angle") {
    const PhaseParams p = phase_params_with_rotation(3, 0.0, kPi / 8);
    CHECK(p.phi == kPi / 8);
    CHECK_FALSE(p.canonical);
    CHECK_THROWS_AS(phase_params_with_rotation(3, 0.0, kPi / 2), InvalidInput);
}

// ===========================================================================
// sl_operator
// ===========================================================================

TEST_CASE("sl_operator on simple matrices") {
    CHECK(sl_operator(SymmetricMatrix(4)) == 0.0);
    CHECK(sl_operator(SymmetricMatrix::identity(2)) == doctest::Approx(kPi / 2).epsilon(1e-15));
    for (double t : {0.3, 1.0, 7.0}) {
        const Spectrum s(std::vector<double>{t, 1.0 / t});
        CHECK(sl_operator(s) == doctest::Approx(kPi / 2).epsilon(1e-14));
    }
}

TEST_CASE("near-infinite eigenvalues book as +-pi/2") {
    CHECK(eig_angle(2e15) == kPi / 2);
    CHECK(eig_angle(-2e15) == -kPi / 2);
    const Spectrum s(std::vector<double>{2e15, 0.0});
    CHECK(sl_operator(s) == kPi / 2);
}

TEST_CASE("orthogonal invariance of the operator") {
    Rng rng(3);
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            SymmetricMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.uniform(-2.0, 2.0));
            const auto q = slagtest::random_orthogonal(n, rng);
            CHECK(std::abs(sl_operator(conjugate_by(m, q)) - sl_operator(m)) <= 1e-12);
        }
    }
}

TEST_CASE("monotonicity in the matrix order") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 5;
        SymmetricMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.uniform(-2.0, 2.0));
        // positive perturbation N = B^T B
        std::vector<double> b(n * n);
        for (auto& v : b) v = rng.uniform(-1.0, 1.0);
        SymmetricMatrix pert(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) dot += b[k * n + i] * b[k * n + j];
                pert.set(i, j, dot);
            }
        CHECK(sl_operator(m) <= sl_operator(m + pert) + 1e-12);
    }
}

// ===========================================================================
// alternate form and trace identity
// ===========================================================================

TEST_CASE("alternate-form residual on explicit spectra") {
    {
        const PhaseParams p = derive_phase_params(3, 0.0);
        const Spectrum s(std::vector<double>{1.0, -1.0, 0.0});
        CHECK(std::abs(alt_form_residual(s, p)) <= 1e-15);
        // both sides equal pi/4
        const double lhs = kPi / 2 - std::atan(1.0);
        CHECK(lhs == doctest::Approx(kPi / 4).epsilon(1e-15));
    }
    {
        const PhaseParams p = derive_phase_params(2, kPi / 4);
        const Spectrum s(std::vector<double>{std::tan(kPi / 4), 0.0});
        CHECK(std::abs(alt_form_residual(s, p)) <= 1e-15);
    }
}

TEST_CASE("alternate-form residual equals Theta - F for arbitrary spectra") {
    Rng rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 7;
        const double lo = n == 2 ? 1e-3 : -(n - 2) * kPi / 2 + 1e-3;
        const double theta = rng.uniform(lo, kPi / 2 - 1e-3);
        const PhaseParams p = derive_phase_params(n, theta);
        std::vector<double> lam(n);
        for (auto& v : lam) v = std::tan(rng.uniform(-1.5, 1.5));
        const Spectrum s(lam);
        const double expect = p.Theta - sl_operator(s);
        CHECK(std::abs(alt_form_residual(s, p) - expect) <= 1e-12);
    }
}

TEST_CASE("alternate form vanishes exactly on solution spectra, n = 2..8") {
    Rng rng(23);
    for (int n = 2; n <= 8; ++n) {
        const double lo = n == 2 ? 1e-3 : -(n - 2) * kPi / 2 + 1e-3;
        for (int trial = 0; trial < 50; ++trial) {
            const double theta = rng.uniform(lo, kPi / 2 - 1e-3);
            const PhaseParams p = derive_phase_params(n, theta);
            const auto ang = slagtest::solution_angles(n, theta, rng);
            const Spectrum s(slagtest::tans_of(ang));
            CHECK(std::abs(alt_form_residual(s, p)) <= 1e-12);
        }
    }
}

TEST_CASE("trace identity on spectra solving the rotated equation") {
    Rng rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 3 + trial % 4;
        const double theta = rng.uniform(-(n - 2) * kPi / 2 + 0.1, kPi / 2 - 0.1);
        const PhaseParams p = derive_phase_params(n, theta);
        const auto ang = slagtest::solution_angles(n, p.rotated_phase(), rng);
        const Spectrum s(slagtest::tans_of(ang));
        CHECK(std::abs(trace_identity_residual(s, p)) <= 1e-12);
    }
}

// ===========================================================================
// eigenvalue bound and rigidity reports
// ===========================================================================

TEST_CASE("semiconvex eigenvalue bounds on the cubic-phase spectrum") {
    const PhaseParams p = derive_phase_params(3, 0.0);
    const Spectrum s(std::vector<double>{1.0, -1.0, 0.0});
    const SemiconvexEigReport r = semiconvex_eig_bounds(s, p);
    CHECK(r.upper_margin == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(r.lower_margin) <= 1e-14);
}

TEST_CASE("semiconvex bound saturation case") {
    const PhaseParams p = derive_phase_params(3, 0.0);
    const double eps = 1e-11;
    const double top = std::tan(kPi / 2 - eps);
    const Spectrum s(std::vector<double>{top, -1.0, -1.0});
    // F = (pi/2 - eps) - pi/2 = -eps, within the default equation tolerance
    const SemiconvexEigReport r = semiconvex_eig_bounds(s, p);
    CHECK(std::abs(r.lower_margin) <= 1e-12);
    CHECK(r.upper_margin == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("semiconvex bounds reject non-solutions") {
    const PhaseParams p = derive_phase_params(3, 0.0);
    CHECK_THROWS_AS(semiconvex_eig_bounds(Spectrum(std::vector<double>{1.0, 1.0, 1.0}), p),
                    InapplicableInput);
}

TEST_CASE("rigidity at the saturated configuration") {
    const PhaseParams p = phase_params_with_rotation(3, 0.0, kPi / 8);
    const double top = std::tan(3 * kPi / 8);
    const double low = std::tan(-3 * kPi / 8);
    const Spectrum s(std::vector<double>{top, low, low});
    const RigidityReport r = rigidity_check(s, p);
    CHECK(r.max_angle_deviation <= 1e-12);

    // pushing the top angle off its maximum makes the check inapplicable
    const Spectrum off(std::vector<double>{std::tan(3 * kPi / 8 - 1e-3), low, low});
    CHECK_THROWS_AS(rigidity_check(off, p), InapplicableInput);
}
