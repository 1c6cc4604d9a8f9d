#include "slag/finite_diff.hpp"

#include <cmath>
#include <limits>

#include "slag/errors.hpp"
#include "slag/parallel.hpp"

namespace slag {

InteriorIndexer::InteriorIndexer(const GridFunction& f) {
    const std::size_t d = f.dim();
    inner_counts_.resize(d);
    total_ = 1;
    for (std::size_t a = 0; a < d; ++a) {
        inner_counts_[a] = f.counts()[a] - 2;
        total_ *= inner_counts_[a];
    }
    strides_.assign(d, 1);
    for (std::size_t a = d - 1; a-- > 0;) strides_[a] = strides_[a + 1] * inner_counts_[a + 1];
}

std::vector<std::size_t> InteriorIndexer::full_multi(std::size_t interior_flat) const {
    std::vector<std::size_t> m(inner_counts_.size());
    for (std::size_t a = 0; a < inner_counts_.size(); ++a) {
        m[a] = interior_flat / strides_[a] + 1;
        interior_flat %= strides_[a];
    }
    return m;
}

GradientField fd_gradient(const GridFunction& f) {
    const std::size_t d = f.dim();
    InteriorIndexer idx(f);
    GradientField g;
    g.dim = d;
    g.data.resize(idx.size() * d);
    parallel_for(idx.size(), [&](std::size_t k) {
        auto m = idx.full_multi(k);
        for (std::size_t a = 0; a < d; ++a) {
            auto mp = m, mm = m;
            ++mp[a];
            --mm[a];
            g.data[k * d + a] = (f.value_at(mp) - f.value_at(mm)) / (2.0 * f.spacing()[a]);
        }
    });
    return g;
}

HessianField fd_hessian(const GridFunction& f) {
    const std::size_t d = f.dim();
    InteriorIndexer idx(f);
    HessianField out;
    out.stencil.scheme = "central-2";
    out.stencil.h = f.spacing();
    out.at.assign(idx.size(), SymmetricMatrix(d));
    parallel_for(idx.size(), [&](std::size_t k) {
        auto m = idx.full_multi(k);
        SymmetricMatrix hess(d);
        const double fc = f.value_at(m);
        for (std::size_t a = 0; a < d; ++a) {
            auto mp = m, mm = m;
            ++mp[a];
            --mm[a];
            const double ha = f.spacing()[a];
            hess.set(a, a, (f.value_at(mp) - 2.0 * fc + f.value_at(mm)) / (ha * ha));
            for (std::size_t b = a + 1; b < d; ++b) {
                auto mpp = mp, mpm = mp, mmp = mm, mmm = mm;
                ++mpp[b];
                --mpm[b];
                ++mmp[b];
                --mmm[b];
                const double hb = f.spacing()[b];
                hess.set(a, b,
                         (f.value_at(mpp) - f.value_at(mpm) - f.value_at(mmp) + f.value_at(mmm)) /
                             (4.0 * ha * hb));
            }
        }
        out.at[k] = hess;
    });
    return out;
}

HessianField hessian_field(const GridFunction& f) {
    if (!f.has_analytic_hessian()) return fd_hessian(f);
    InteriorIndexer idx(f);
    HessianField out;
    out.stencil.scheme = "analytic";
    out.at.assign(idx.size(), SymmetricMatrix(f.dim()));
    parallel_for(idx.size(), [&](std::size_t k) {
        auto m = idx.full_multi(k);
        Point x(f.dim());
        for (std::size_t a = 0; a < f.dim(); ++a) x[a] = f.coordinate(a, m[a]);
        out.at[k] = f.analytic_hessian(x);
    });
    return out;
}

SemiconvexityMargin semiconvexity_certify(const GridFunction& f, double K) {
    const HessianField field = hessian_field(f);
    const std::size_t n = field.at.size();
    const std::size_t chunks = n_chunks();
    std::vector<double> part_min(chunks, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> part_arg(chunks, 0);
    parallel_for_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const double lmin = jacobi_eigen(field.at[k]).eigenvalues.back();
            if (lmin < part_min[c]) {
                part_min[c] = lmin;
                part_arg[c] = k;
            }
        }
    });
    SemiconvexityMargin r;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < chunks; ++c) {
        if (part_min[c] < best) {
            best = part_min[c];
            r.worst_interior = part_arg[c];
        }
    }
    r.margin = best + K;
    return r;
}

double sup_gradient_norm(const GridFunction& f) {
    const std::size_t chunks = n_chunks();
    std::vector<double> part(chunks, 0.0);
    if (f.has_analytic_gradient()) {
        parallel_for_chunks(f.node_count(), [&](std::size_t c, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const Point g = f.analytic_gradient(f.node_point(i));
                double s = 0.0;
                for (double v : g) s += v * v;
                part[c] = std::max(part[c], s);
            }
        });
    } else {
        const GradientField g = fd_gradient(f);
        const std::size_t n = g.data.size() / g.dim;
        parallel_for_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const double* v = g.at(i);
                double s = 0.0;
                for (std::size_t a = 0; a < g.dim; ++a) s += v[a] * v[a];
                part[c] = std::max(part[c], s);
            }
        });
    }
    double best = 0.0;
    for (double v : part) best = std::max(best, v);
    return std::sqrt(best);
}

GradientEvaluator::GradientEvaluator(const GridFunction& f)
    : f_(f), analytic_(f.has_analytic_gradient()), indexer_(f) {
    if (!analytic_) field_ = fd_gradient(f);
}

Point GradientEvaluator::operator()(const Point& x) const {
    if (analytic_) return f_.analytic_gradient(x);

    const std::size_t d = f_.dim();
    // Multilinear interpolation over the interior lattice.
    std::vector<std::size_t> base(d);
    std::vector<double> t(d);
    std::vector<std::size_t> inner(d);
    for (std::size_t a = 0; a < d; ++a) {
        inner[a] = f_.counts()[a] - 2;
        const double lo = f_.coordinate(a, 1);
        const double hi = f_.coordinate(a, f_.counts()[a] - 2);
        if (x[a] < lo - 1e-12 || x[a] > hi + 1e-12)
            throw InvalidInput("GradientEvaluator: point outside interior hull");
        double u = (x[a] - lo) / f_.spacing()[a];
        double cell = std::floor(u);
        if (cell > static_cast<double>(inner[a] - 2)) cell = static_cast<double>(inner[a] - 2);
        if (cell < 0.0) cell = 0.0;
        base[a] = static_cast<std::size_t>(cell);
        t[a] = u - cell;
    }
    std::vector<std::size_t> strides(d, 1);
    for (std::size_t a = d - 1; a-- > 0;) strides[a] = strides[a + 1] * inner[a + 1];

    Point g(d, 0.0);
    const std::size_t corners = static_cast<std::size_t>(1) << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        double w = 1.0;
        std::size_t flat = 0;
        for (std::size_t a = 0; a < d; ++a) {
            const bool hi = (mask >> a) & 1u;
            w *= hi ? t[a] : (1.0 - t[a]);
            flat += (base[a] + (hi ? 1 : 0)) * strides[a];
        }
        const double* v = field_.at(flat);
        for (std::size_t a = 0; a < d; ++a) g[a] += w * v[a];
    }
    return g;
}

}  // namespace slag
