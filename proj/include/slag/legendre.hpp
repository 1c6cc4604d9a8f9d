#pragma once

#include <utility>
#include <vector>

#include "slag/finite_diff.hpp"
#include "slag/grid_function.hpp"

namespace slag {

// f*(xbar) = sup over sample nodes of (xbar . x - f(x)), an exact discrete
// supremum by direct scan.  argmax ties resolve to the first node in
// row-major order, so results are deterministic.
struct ConjugateResult {
    std::vector<Point> queries;
    std::vector<double> values;
    std::vector<std::size_t> argmax_node;  // flat node index
};

ConjugateResult conjugate(const GridFunction& f, const std::vector<Point>& queries);

/// Default query set: the exact gradient image of the interior nodes.
std::vector<Point> gradient_image_queries(const GridFunction& f);

struct InvolutionReport {
    double sup_error = 0.0;  // max over interior nodes of f - (f*)*  (always >= 0)
};

/// Requires f convex on its box (certified with K = 0 up to convexity_tol).
InvolutionReport involution_check(const GridFunction& f, double convexity_tol = 1e-9);

struct HessianDualityReport {
    SymmetricMatrix conjugate_hessian;  // D^2 g* at xbar0, FD on a local conjugate patch
    SymmetricMatrix inverse_hessian;    // (D^2 g(x0))^-1
    double discrepancy = 0.0;           // max-abs entry difference
    double stencil_h = 0.0;
};

/// D^2 g*(grad g(x0)) vs (D^2 g(x0))^-1.  Needs lambda_min(D^2 g(x0)) >= 0.1
/// and enough room for the conjugate-side stencil inside the gradient image.
/// stencil_h = 0 picks h_grid^0.4, balancing discrete-sup noise (which enters
/// second differences as ~h_grid^2/hbar^2) against truncation.
HessianDualityReport hessian_duality_check(const GridFunction& g, const Point& x0,
                                           double stencil_h = 0.0);

struct DistanceIncreasingReport {
    double min_ratio = 0.0;  // min over pairs of |grad g(x1)-grad g(x2)|^2 / (L |x1-x2|^2)
};

/// Requires g to be L-strongly convex in the squared-increment sense, i.e.
/// lambda_min(D^2 g) >= sqrt(L) on the interior.
DistanceIncreasingReport distance_increasing_check(const GridFunction& g, double L,
                                                   const std::vector<std::pair<Point, Point>>& pairs);

}  // namespace slag
