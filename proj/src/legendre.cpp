#include "slag/legendre.hpp"

#include <cmath>
#include <limits>

#include "slag/errors.hpp"
#include "slag/linalg.hpp"
#include "slag/parallel.hpp"

namespace slag {

namespace {

struct ScanHit {
    double value;
    std::size_t arg;
};

// One supremum scan over all grid nodes.  Keeps a running prefix of the dot
// product so the innermost axis costs one multiply per node.
ScanHit scan_nodes(const GridFunction& f, const double* q) {
    const std::size_t d = f.dim();
    const auto& counts = f.counts();
    const std::vector<double>& vals = f.values();

    std::vector<std::size_t> multi(d, 0);
    std::vector<double> prefix(d, 0.0);  // prefix[a] = sum_{b<a} q_b x_b
    for (std::size_t a = 0; a + 1 < d; ++a)
        prefix[a + 1] = prefix[a] + q[a] * f.coordinate(a, 0);

    const auto& last = f.axis_coords(d - 1);
    const double qlast = q[d - 1];
    const std::size_t nlast = counts[d - 1];

    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_arg = 0;
    std::size_t flat = 0;
    for (;;) {
        const double base = prefix[d - 1];
        for (std::size_t j = 0; j < nlast; ++j, ++flat) {
            const double obj = base + qlast * last[j] - vals[flat];
            if (obj > best) {
                best = obj;
                best_arg = flat;
            }
        }
        std::size_t a = d - 1;
        bool done = true;
        while (a-- > 0) {
            if (++multi[a] < counts[a]) {
                for (std::size_t b = a; b + 1 < d; ++b)
                    prefix[b + 1] = prefix[b] + q[b] * f.coordinate(b, multi[b]);
                done = false;
                break;
            }
            multi[a] = 0;
        }
        if (done) break;
    }
    return {best, best_arg};
}

SymmetricMatrix invert_spd(const SymmetricMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<double> dense = m.to_dense();
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        const std::vector<double> x = solve_dense(dense, e, n);
        for (std::size_t r = 0; r < n; ++r) inv[r * n + col] = x[r];
    }
    return SymmetricMatrix::from_dense(n, inv);
}

}  // namespace

ConjugateResult conjugate(const GridFunction& f, const std::vector<Point>& queries) {
    ConjugateResult out;
    out.queries = queries;
    out.values.resize(queries.size());
    out.argmax_node.resize(queries.size());
    if (queries.empty()) return out;
    const std::size_t d = f.dim();
    for (const Point& q : queries)
        if (q.size() != d) throw InvalidInput("conjugate: query dimension mismatch");

    parallel_for(queries.size(), [&](std::size_t i) {
        const ScanHit hit = scan_nodes(f, queries[i].data());
        out.values[i] = hit.value;
        out.argmax_node[i] = hit.arg;
    });
    return out;
}

std::vector<Point> gradient_image_queries(const GridFunction& f) {
    const InteriorIndexer idx(f);
    std::vector<Point> queries(idx.size());
    if (f.has_analytic_gradient()) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const auto m = idx.full_multi(k);
            Point x(f.dim());
            for (std::size_t a = 0; a < f.dim(); ++a) x[a] = f.coordinate(a, m[a]);
            queries[k] = f.analytic_gradient(x);
        }
    } else {
        const GradientField g = fd_gradient(f);
        for (std::size_t k = 0; k < idx.size(); ++k)
            queries[k] = Point(g.at(k), g.at(k) + f.dim());
    }
    return queries;
}

InvolutionReport involution_check(const GridFunction& f, double convexity_tol) {
    const SemiconvexityMargin cert = semiconvexity_certify(f, 0.0);
    if (cert.margin < -convexity_tol)
        throw InapplicableInput("involution_check: input not convex on the grid");

    // First pass: f* sampled on a uniform grid over the bounding box of the
    // gradient image, so the second pass is a genuine second application of
    // the same grid transform.  (Querying at the exact per-node gradients
    // would reproduce f exactly: each query's argmax is its own node.)
    const std::size_t d = f.dim();
    const std::vector<Point> node_gradients = gradient_image_queries(f);
    Box star_box(d);
    for (std::size_t a = 0; a < d; ++a) {
        double lo = node_gradients[0][a], hi = lo;
        for (const Point& g : node_gradients) {
            lo = std::min(lo, g[a]);
            hi = std::max(hi, g[a]);
        }
        if (hi - lo < 1e-12) {  // affine direction: center the slope on a node
            lo -= 1.0;
            hi += 1.0;
        }
        star_box[a] = {lo, hi};
    }
    std::vector<std::size_t> star_counts = f.counts();
    for (auto& c : star_counts) c |= 1;  // odd, so box centers are nodes

    std::size_t total = 1;
    for (std::size_t c : star_counts) total *= c;
    std::vector<Point> star_nodes(total, Point(d));
    {
        std::vector<std::size_t> strides(d, 1);
        for (std::size_t a = d - 1; a-- > 0;) strides[a] = strides[a + 1] * star_counts[a + 1];
        for (std::size_t i = 0; i < total; ++i) {
            std::size_t rem = i;
            for (std::size_t a = 0; a < d; ++a) {
                const std::size_t ia = rem / strides[a];
                rem %= strides[a];
                star_nodes[i][a] = star_box[a].lo + static_cast<double>(ia) *
                                                        (star_box[a].hi - star_box[a].lo) /
                                                        static_cast<double>(star_counts[a] - 1);
            }
        }
    }
    const ConjugateResult star = conjugate(f, star_nodes);
    const GridFunction fstar(star_box, star_counts, star.values);

    // Second pass back at the interior nodes of f.
    const InteriorIndexer idx(f);
    std::vector<Point> back_queries(idx.size(), Point(d));
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto m = idx.full_multi(k);
        for (std::size_t a = 0; a < d; ++a) back_queries[k][a] = f.coordinate(a, m[a]);
    }
    const ConjugateResult back = conjugate(fstar, back_queries);

    InvolutionReport r;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto m = idx.full_multi(k);
        r.sup_error = std::max(r.sup_error, std::abs(f.value_at(m) - back.values[k]));
    }
    return r;
}

HessianDualityReport hessian_duality_check(const GridFunction& g, const Point& x0,
                                           double stencil_h) {
    const std::size_t d = g.dim();
    if (x0.size() != d) throw InvalidInput("hessian_duality_check: point dimension mismatch");

    SymmetricMatrix hess0(d);
    if (g.has_analytic_hessian()) {
        hess0 = g.analytic_hessian(x0);
    } else {
        // x0 must sit on an interior node for the FD route.
        std::vector<std::size_t> multi(d);
        for (std::size_t a = 0; a < d; ++a) {
            const double u = (x0[a] - g.box()[a].lo) / g.spacing()[a];
            const double r = std::round(u);
            if (std::abs(u - r) > 1e-9)
                throw InvalidInput("hessian_duality_check: sampled-only input needs a node point");
            multi[a] = static_cast<std::size_t>(r);
            if (multi[a] == 0 || multi[a] + 1 >= g.counts()[a])
                throw InvalidInput("hessian_duality_check: node not interior");
        }
        const HessianField hf = fd_hessian(g);
        std::size_t interior_flat = 0;
        for (std::size_t a = 0; a < d; ++a) {
            std::size_t stride = 1;
            for (std::size_t b = a + 1; b < d; ++b) stride *= g.counts()[b] - 2;
            interior_flat += (multi[a] - 1) * stride;
        }
        hess0 = hf.at[interior_flat];
    }

    const double lmin = jacobi_eigen(hess0).eigenvalues.back();
    if (lmin < 0.1)
        throw InapplicableInput("hessian_duality_check: Hessian not strongly convex at x0");

    const GradientEvaluator grad(g);
    const Point xbar0 = grad(x0);

    double hbar = stencil_h;
    if (hbar <= 0.0) hbar = std::pow(g.spacing_min(), 0.4);

    // The 5-node patch reaches 2*hbar from xbar0; it must stay inside the
    // gradient image, which contains a ball of radius ~ lambda_min * dist.
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < d; ++a) {
        dist = std::min(dist, x0[a] - g.box()[a].lo);
        dist = std::min(dist, g.box()[a].hi - x0[a]);
    }
    if (2.0 * hbar * std::sqrt(static_cast<double>(d)) > 0.9 * lmin * dist)
        throw InapplicableInput("hessian_duality_check: xbar0 too close to the gradient-image boundary");

    Box patch_box(d);
    std::vector<std::size_t> patch_counts(d, 5);
    for (std::size_t a = 0; a < d; ++a)
        patch_box[a] = {xbar0[a] - 2.0 * hbar, xbar0[a] + 2.0 * hbar};

    // Evaluate the conjugate at the 5^d patch nodes.
    std::size_t total = 1;
    for (std::size_t c : patch_counts) total *= c;
    std::vector<Point> patch_queries(total, Point(d));
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        for (std::size_t a = d; a-- > 0;) {
            patch_queries[i][a] = patch_box[a].lo + static_cast<double>(rem % 5) * hbar;
            rem /= 5;
        }
    }
    const ConjugateResult values = conjugate(g, patch_queries);
    GridFunction patch(patch_box, patch_counts, values.values);

    const HessianField hf = fd_hessian(patch);
    // center of the 3^d interior block
    std::size_t center = 0;
    for (std::size_t a = 0; a < d; ++a) {
        std::size_t stride = 1;
        for (std::size_t b = a + 1; b < d; ++b) stride *= 3;
        center += stride;
    }

    HessianDualityReport rep;
    rep.conjugate_hessian = hf.at[center];
    rep.inverse_hessian = invert_spd(hess0);
    rep.discrepancy = rep.conjugate_hessian.max_abs_diff(rep.inverse_hessian);
    rep.stencil_h = hbar;
    return rep;
}

DistanceIncreasingReport distance_increasing_check(const GridFunction& g, double L,
                                                   const std::vector<std::pair<Point, Point>>& pairs) {
    if (!(L > 0.0)) throw InvalidInput("distance_increasing_check: L must be positive");
    const double root = std::sqrt(L);
    const SemiconvexityMargin cert = semiconvexity_certify(g, -root);
    if (cert.margin < -1e-9)
        throw InapplicableInput("distance_increasing_check: g is not L-strongly convex");

    const GradientEvaluator grad(g);
    DistanceIncreasingReport rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& [p1, p2] : pairs) {
        double dx2 = 0.0;
        for (std::size_t a = 0; a < g.dim(); ++a) dx2 += (p1[a] - p2[a]) * (p1[a] - p2[a]);
        if (dx2 == 0.0) throw InvalidInput("distance_increasing_check: coincident pair points");
        const Point g1 = grad(p1);
        const Point g2 = grad(p2);
        double dg2 = 0.0;
        for (std::size_t a = 0; a < g.dim(); ++a) dg2 += (g1[a] - g2[a]) * (g1[a] - g2[a]);
        rep.min_ratio = std::min(rep.min_ratio, dg2 / (L * dx2));
    }
    return rep;
}

}  // namespace slag
