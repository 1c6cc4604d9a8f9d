#pragma once

#include "slag/phase.hpp"
#include "slag/symmetric_matrix.hpp"

namespace slag {

// Eigen-angle of a Hessian eigenvalue.  Values beyond 1e15 in magnitude are
// booked as exactly +-pi/2, which is what the singular-direction accounting
// needs.
double eig_angle(double lambda);

/// cot^-1(lambda) = pi/2 - atan(lambda), valued in (0, pi).
double arccot(double lambda);

/// F(M) = sum_i atan(lambda_i(M)).  Total, orthogonally invariant, monotone.
double sl_operator(const SymmetricMatrix& m);
double sl_operator(const Spectrum& spec);

/// (pi/2 - atan(lambda_1)) - sum_{i>=2} (atan(lambda_i) + theta).
/// Identically Theta - F(spec) in the semi-convex bookkeeping; zero exactly
/// on spectra solving the equation.
double alt_form_residual(const Spectrum& spec, const PhaseParams& params);

/// sum_{i>=2} [atan(lambda_i) + theta + phi] - (cot^-1(lambda_1) - phi).
/// Identically zero whenever F(spec) = Theta - n*phi.
double trace_identity_residual(const Spectrum& spec, const PhaseParams& params);

// Bounds on the non-maximal eigenvalues of solutions:
// -tan(theta) <= lambda_i < 1 for i >= 2.
struct SemiconvexEigReport {
    double upper_margin = 0.0;  // min_{i>=2} (1 - lambda_i), positive when the bound holds
    double lower_margin = 0.0;  // lambda_n + tan(theta)
};

/// Preconditions: F(spec) = Theta within tol and lambda_n >= -tan(theta) - tol.
/// Throws InapplicableInput otherwise.
SemiconvexEigReport semiconvex_eig_bounds(const Spectrum& spec, const PhaseParams& params,
                                          double tol = 1e-10);

// Saturation at a maximal top eigen-angle: when atan(lambda_1) = pi/2 - phi
// and F = Theta - n*phi with the rotated semi-convexity bound, every other
// eigen-angle is forced to equal -(theta + phi).
struct RigidityReport {
    double max_angle_deviation = 0.0;  // max_{i>=2} |atan(lambda_i) + theta + phi|
    double derived_tol = 0.0;          // (n+1) * input tol
};

RigidityReport rigidity_check(const Spectrum& spec, const PhaseParams& params, double tol = 1e-10);

}  // namespace slag
