#pragma once

#include <cmath>
#include <vector>

#include "slag/rng.hpp"
#include "slag/symmetric_matrix.hpp"

namespace slagtest {

constexpr double kPi = 3.14159265358979323846;

/// Random orthogonal frame as a product of Givens rotations.
inline std::vector<double> random_orthogonal(std::size_t n, slag::Rng& rng) {
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t r = p + 1; r < n; ++r) {
            const double ang = rng.uniform(0.0, 2.0 * kPi);
            const double c = std::cos(ang), s = std::sin(ang);
            for (std::size_t row = 0; row < n; ++row) {
                const double qp = q[row * n + p];
                const double qr = q[row * n + r];
                q[row * n + p] = c * qp - s * qr;
                q[row * n + r] = s * qp + c * qr;
            }
        }
    }
    return q;
}

inline slag::SymmetricMatrix matrix_with_eigenvalues(const std::vector<double>& lambdas,
                                                     slag::Rng& rng) {
    const auto q = random_orthogonal(lambdas.size(), rng);
    return slag::from_spectrum(lambdas, q);
}

/// n eigen-angles, each within (-limit, limit), summing to target.
inline std::vector<double> solution_angles(int n, double target, slag::Rng& rng,
                                           double limit = 1.5) {
    for (int tries = 0; tries < 100000; ++tries) {
        std::vector<double> ang(n);
        double sum = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            ang[i] = rng.uniform(-limit, limit);
            sum += ang[i];
        }
        ang[n - 1] = target - sum;
        if (std::abs(ang[n - 1]) < limit) return ang;
    }
    throw std::runtime_error("solution_angles: sampling failed");
}

inline std::vector<double> tans_of(const std::vector<double>& angles) {
    std::vector<double> v(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) v[i] = std::tan(angles[i]);
    return v;
}

}  // namespace slagtest
