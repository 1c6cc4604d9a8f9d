#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slag/grid_function.hpp"
#include "slag/phase.hpp"
#include "slag/solutions.hpp"

namespace slag {

// Continuous curve as a polyline; the parameter is normalized cumulative arc
// length, t in [0,1].
class Polyline {
public:
    /// vertices flattened row-major (m x dim); needs >= 2 vertices and
    /// distinct consecutive vertices.
    Polyline(std::size_t dim, std::vector<double> vertices);

    std::size_t dim() const { return dim_; }
    std::size_t vertex_count() const { return pts_.size() / dim_; }
    const std::vector<double>& vertices() const { return pts_; }
    const std::vector<double>& params() const { return t_; }

    Point at(double t) const;
    double max_distance_from_start() const;

private:
    std::size_t dim_;
    std::vector<double> pts_;
    std::vector<double> t_;
};

// Chain of pairwise disjoint, sequentially tangent balls of radius r centered
// on the curve, built by the inductive supremum
//   t_i = sup { t in [0,1] : |gamma(t) - gamma(t_{i-1})| <= 2r }.
// The sup is found exactly on the polyline by scanning segments from the end
// and solving the per-segment quadratic.
struct BallChain {
    double r = 0.0;
    std::vector<double> params;    // t_0 = 0 < t_1 < ... < t_k < 1
    std::vector<double> centers;   // (k+1) x dim
    std::size_t k() const { return params.empty() ? 0 : params.size() - 1; }
};

BallChain ball_chain(const Polyline& curve, double r);

// Post-hoc certificate of the chain properties.
struct ChainReport {
    double min_pair_gap = 0.0;       // min over i != j of |c_i - c_j|   (want > 2r)
    double max_tangency_dev = 0.0;   // max over consecutive of | |c_{i+1}-c_i| - 2r |
    double endpoint_distance = 0.0;  // |gamma(1) - c_k|                 (want <= 2r)
    double count_bound = 0.0;        // (1 + sup|gamma - gamma(0)|/r)^n - 1
};
ChainReport verify_chain(const BallChain& chain, const Polyline& curve);

/// Chain along t -> c*(t x) + s*grad u(t x), the image of the ray to x under
/// the rotation map, sampled on t_samples points.
BallChain chain_on_gradient_image(const GridFunction& u, const PhaseParams& params, const Point& x,
                                  double r, std::size_t t_samples = 10000);

struct LaplacianBoundReport {
    double integral = 0.0;  // integral over the half-box of (lambda_1)_+
    double L = 0.0;         // sup |grad u| over the full box
    double ratio = 0.0;     // integral / (1 + L)
};
LaplacianBoundReport laplacian_integral_bound(const GridFunction& u, const PhaseParams& params);

/// Greedy Vitali pass: centers at least 2r apart, every input point within 2r
/// of some center (so 3r dilations cover).  Returns the center count.
std::size_t vitali_cover_count(const std::vector<double>& points, std::size_t dim, double r);

// One row of the effective-estimate sweep over the embedded family.
struct SweepRecord {
    double M = 0.0;
    double L = 0.0;        // sup |grad w| over the probe region
    double lambda1 = 0.0;  // top Hessian eigenvalue at 0, e^M analytically
    std::size_t chain_k = 0;
    double volume = 0.0;   // area-formula volume of the rotated image of the probe region
    double ratio = 0.0;    // log(lambda1) / (1 + L)
    std::size_t vitali_n = 0;  // diagnostic cover count at r/3
};

/// Builds EmbeddedSemiconvex(M, theta, n) for each M and measures the
/// linear-exponential mechanism: lambda1 = e^M against L ~ M.
std::vector<SweepRecord> estimate_sweep(const std::vector<double>& m_values, double theta, int n,
                                        double chain_r = 0.05);

/// CSV with header `M,L,lambda1,chain_k,volume,ratio`, 10 significant digits.
std::string sweep_to_csv(const std::vector<SweepRecord>& records);

}  // namespace slag
