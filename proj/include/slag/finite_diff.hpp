#pragma once

#include <string>
#include <vector>

#include "slag/grid_function.hpp"
#include "slag/symmetric_matrix.hpp"

namespace slag {

// Per-interior-node fields.  The boundary ring of width 1 is excluded; index
// arithmetic runs over counts-2 nodes per axis.
class InteriorIndexer {
public:
    explicit InteriorIndexer(const GridFunction& f);
    std::size_t size() const { return total_; }
    /// Multi-index into the full grid (each component in [1, count-2]).
    std::vector<std::size_t> full_multi(std::size_t interior_flat) const;

private:
    std::vector<std::size_t> inner_counts_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
};

struct GradientField {
    std::size_t dim = 0;
    std::vector<double> data;  // interior nodes x dim
    const double* at(std::size_t interior_flat) const { return data.data() + interior_flat * dim; }
};

struct StencilRecord {
    std::string scheme;       // "central-2" or "analytic"
    std::vector<double> h;    // spacing per axis (empty for analytic)
};

struct HessianField {
    std::vector<SymmetricMatrix> at;  // per interior node
    StencilRecord stencil;
};

/// Central differences, O(h^2), exact on quadratics.
GradientField fd_gradient(const GridFunction& f);

/// Central second differences; 4-point symmetric cross stencil for the mixed
/// terms.  Exact on quadratics.
HessianField fd_hessian(const GridFunction& f);

/// Analytic Hessian at interior nodes when available, else fd_hessian.
/// Closed forms with exponential dynamic range would lose every digit under
/// naive differencing, so they always win.
HessianField hessian_field(const GridFunction& f);

struct SemiconvexityMargin {
    double margin = 0.0;            // min over interior nodes of lambda_min(D^2 f) + K
    std::size_t worst_interior = 0;
};

/// Nonnegative margin certifies discrete K-semi-convexity on the interior.
SemiconvexityMargin semiconvexity_certify(const GridFunction& f, double K);

/// sup_x |grad f|: over all nodes with the analytic gradient, over interior
/// nodes with finite differences.
double sup_gradient_norm(const GridFunction& f);

// Gradient at arbitrary points: analytic when present, otherwise multilinear
// interpolation of the central-difference field over the interior lattice.
class GradientEvaluator {
public:
    explicit GradientEvaluator(const GridFunction& f);
    Point operator()(const Point& x) const;

private:
    const GridFunction& f_;
    bool analytic_;
    GradientField field_;
    InteriorIndexer indexer_;
};

}  // namespace slag
