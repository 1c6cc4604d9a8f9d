#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slag/grid_function.hpp"
#include "slag/phase.hpp"
#include "slag/symmetric_matrix.hpp"

namespace slag {

// Downward rotation of a Hessian by angle phi: every eigen-angle shifts by
// -phi, equivalently M -> (-sI + cM)(cI + sM)^{-1} on the spectral frame.
// Requires lambda_min(M) > -cot(phi) so the shifted angles stay in range.
SymmetricMatrix hessian_rotate(const SymmetricMatrix& m, double phi);

/// Inverse map; requires lambda_max(Mbar) < cot(phi).
SymmetricMatrix hessian_unrotate(const SymmetricMatrix& mbar, double phi);

// Scattered image of the gradient graph after a phi-rotation:
//   xbar = c x + s grad u(x),   ybar = -s x + c grad u(x),
//   ubar(xbar) = c/(2s) |xbar|^2 - (1/s) (s u + c|x|^2/2)*(xbar).
struct RotatedGraph {
    PhaseParams params;
    std::size_t dim = 0;
    std::vector<double> x;     // N x dim, source interior nodes
    std::vector<double> xbar;  // N x dim
    std::vector<double> ybar;  // N x dim
    std::vector<double> ubar;  // N
    std::size_t size() const { return ubar.size(); }
};

/// phi = 0 is the identity rotation (the conjugation formula divides by s).
/// Otherwise u must be K-semi-convex with K < cot(phi), which makes
/// s u + c|x|^2/2 uniformly convex.
RotatedGraph rotate_function(const GridFunction& u, const PhaseParams& params, double K);

/// Consistency of the scattered values: slope of a weighted least-squares
/// affine fit of ubar over the 2*dim+1 nearest image points, compared with
/// ybar.  Returns the max |fit slope - ybar| over a deterministic subsample.
double scattered_gradient_residual(const RotatedGraph& g, std::size_t max_checks = 256,
                                   std::uint64_t seed = 0);

/// F(P) - (Theta - n phi) for a quadratic touching from above with maximal
/// top eigen-angle.  Preconditions: atan(lambda_1) >= pi/2 - phi - tol and
/// P >= -tan(theta + theta_inflation + phi) I - tol.  With theta_inflation = 0
/// the margin is nonnegative; inflating the lower bound breaks that, which is
/// exactly the sharpness of the angle bookkeeping.
double subsolution_step1_margin(const Spectrum& spec, const PhaseParams& params,
                                double pre_tol = 1e-12, double theta_inflation = 0.0);
double subsolution_step1_margin(const SymmetricMatrix& pbar, const PhaseParams& params,
                                double pre_tol = 1e-12, double theta_inflation = 0.0);

/// integral over the box of det(cI + s D^2 u), the area-formula volume of the
/// rotated gradient image.  Midpoint quadrature on cell centers with the
/// analytic Hessian, a node Riemann sum on the finite-difference field
/// otherwise.
double gradient_image_volume(const GridFunction& u, const PhaseParams& params);

std::string rotated_graph_to_json(const RotatedGraph& g);

}  // namespace slag
