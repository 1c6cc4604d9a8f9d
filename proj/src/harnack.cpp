#include "slag/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slag/errors.hpp"
#include "slag/finite_diff.hpp"
#include "slag/num_format.hpp"
#include "slag/parallel.hpp"
#include "slag/sl_operator.hpp"

namespace slag {

Polyline::Polyline(std::size_t dim, std::vector<double> vertices)
    : dim_(dim), pts_(std::move(vertices)) {
    if (dim_ == 0 || pts_.size() % dim_ != 0) throw InvalidInput("Polyline: bad vertex array");
    const std::size_t m = pts_.size() / dim_;
    if (m < 2) throw InvalidInput("Polyline: need at least 2 vertices");
    std::vector<double> arc(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < dim_; ++a) {
            const double d = pts_[i * dim_ + a] - pts_[(i - 1) * dim_ + a];
            d2 += d * d;
        }
        if (d2 == 0.0) throw InvalidInput("Polyline: consecutive vertices must be distinct");
        arc[i] = arc[i - 1] + std::sqrt(d2);
    }
    t_.resize(m);
    for (std::size_t i = 0; i < m; ++i) t_[i] = arc[i] / arc.back();
    t_.back() = 1.0;
}

Point Polyline::at(double t) const {
    if (t <= 0.0) return Point(pts_.begin(), pts_.begin() + dim_);
    if (t >= 1.0) return Point(pts_.end() - dim_, pts_.end());
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t seg = static_cast<std::size_t>(it - t_.begin()) - 1;
    const double span = t_[seg + 1] - t_[seg];
    const double sig = span > 0.0 ? (t - t_[seg]) / span : 0.0;
    Point p(dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
        const double lo = pts_[seg * dim_ + a];
        const double hi = pts_[(seg + 1) * dim_ + a];
        p[a] = lo + sig * (hi - lo);
    }
    return p;
}

double Polyline::max_distance_from_start() const {
    // distance to a fixed point is convex along each segment, so vertices
    // attain the max
    const std::size_t m = vertex_count();
    double best = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < dim_; ++a) {
            const double d = pts_[i * dim_ + a] - pts_[a];
            d2 += d * d;
        }
        best = std::max(best, d2);
    }
    return std::sqrt(best);
}

namespace {

// sup { t : |gamma(t) - p| <= R }, exact on the polyline: scan segments from
// the end, keep the last parameter where the quadratic constraint holds.
double last_param_within(const Polyline& c, const Point& p, double R) {
    const std::size_t d = c.dim();
    const std::size_t m = c.vertex_count();
    const auto& v = c.vertices();
    const auto& t = c.params();
    for (std::size_t seg = m - 1; seg-- > 0;) {
        const double* a = v.data() + seg * d;
        const double* b = v.data() + (seg + 1) * d;
        double A = 0.0, B = 0.0, C = 0.0;
        for (std::size_t ax = 0; ax < d; ++ax) {
            const double e = b[ax] - a[ax];
            const double w = a[ax] - p[ax];
            A += e * e;
            B += 2.0 * w * e;
            C += w * w;
        }
        C -= R * R;
        // psi(1) <= 0: the segment end qualifies
        if (A + B + C <= 0.0) return t[seg + 1];
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        double r1, r2;
        if (B >= 0.0) {
            const double q = -0.5 * (B + sq);
            r1 = q / A;
            r2 = q != 0.0 ? C / q : r1;
        } else {
            const double q = -0.5 * (B - sq);
            r2 = q / A;
            r1 = q != 0.0 ? C / q : r2;
        }
        const double lo = std::min(r1, r2);
        const double hi = std::max(r1, r2);
        if (hi < 0.0 || lo > 1.0) continue;
        const double sig = std::min(hi, 1.0);
        if (sig >= 0.0) return t[seg] + sig * (t[seg + 1] - t[seg]);
    }
    return 0.0;
}

}  // namespace

BallChain ball_chain(const Polyline& curve, double r) {
    if (!(r > 0.0)) throw InvalidInput("ball_chain: r > 0 required");
    BallChain chain;
    chain.r = r;
    chain.params.push_back(0.0);
    {
        const Point p0 = curve.at(0.0);
        chain.centers.insert(chain.centers.end(), p0.begin(), p0.end());
    }
    for (std::size_t guard = 0; guard < 1000000; ++guard) {
        const Point p = curve.at(chain.params.back());
        const double tn = last_param_within(curve, p, 2.0 * r);
        if (tn >= 1.0) break;           // t_{k+1} = 1: the chain is complete
        if (tn <= chain.params.back()) break;  // sub-resolution step, stop
        chain.params.push_back(tn);
        const Point pc = curve.at(tn);
        chain.centers.insert(chain.centers.end(), pc.begin(), pc.end());
    }
    return chain;
}

ChainReport verify_chain(const BallChain& chain, const Polyline& curve) {
    const std::size_t d = curve.dim();
    const std::size_t cnt = chain.params.size();
    ChainReport rep;
    rep.min_pair_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cnt; ++i) {
        for (std::size_t j = i + 1; j < cnt; ++j) {
            double d2 = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                const double delta = chain.centers[i * d + a] - chain.centers[j * d + a];
                d2 += delta * delta;
            }
            const double dist = std::sqrt(d2);
            rep.min_pair_gap = std::min(rep.min_pair_gap, dist);
            if (j == i + 1)
                rep.max_tangency_dev = std::max(rep.max_tangency_dev, std::abs(dist - 2.0 * chain.r));
        }
    }
    const Point end = curve.at(1.0);
    double d2 = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        const double delta = end[a] - chain.centers[(cnt - 1) * d + a];
        d2 += delta * delta;
    }
    rep.endpoint_distance = std::sqrt(d2);
    rep.count_bound =
        std::pow(1.0 + curve.max_distance_from_start() / chain.r, static_cast<double>(d)) - 1.0;
    if (cnt == 1) rep.min_pair_gap = std::numeric_limits<double>::infinity();
    return rep;
}

BallChain chain_on_gradient_image(const GridFunction& u, const PhaseParams& params, const Point& x,
                                  double r, std::size_t t_samples) {
    if (x.size() != u.dim()) throw InvalidInput("chain_on_gradient_image: bad point dim");
    if (t_samples < 2) throw InvalidInput("chain_on_gradient_image: need >= 2 samples");
    const GradientEvaluator grad(u);
    const double s = params.sin_phi;
    const double c = params.cos_phi;
    const std::size_t d = u.dim();

    std::vector<double> vertices;
    vertices.reserve(t_samples * d);
    Point prev;
    for (std::size_t i = 0; i < t_samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(t_samples - 1);
        Point p(d);
        for (std::size_t a = 0; a < d; ++a) p[a] = t * x[a];
        const Point g = grad(p);
        Point img(d);
        for (std::size_t a = 0; a < d; ++a) img[a] = c * p[a] + s * g[a];
        if (!prev.empty()) {
            double d2 = 0.0;
            for (std::size_t a = 0; a < d; ++a) d2 += (img[a] - prev[a]) * (img[a] - prev[a]);
            if (d2 == 0.0) continue;  // duplicate sample
        }
        vertices.insert(vertices.end(), img.begin(), img.end());
        prev = img;
    }
    if (vertices.size() < 2 * d) {
        // Constant curve: a single ball covers everything.
        BallChain chain;
        chain.r = r;
        chain.params.push_back(0.0);
        chain.centers = vertices.empty() ? std::vector<double>(d, 0.0) : vertices;
        return chain;
    }
    return ball_chain(Polyline(d, std::move(vertices)), r);
}

LaplacianBoundReport laplacian_integral_bound(const GridFunction& u, const PhaseParams& params) {
    (void)params;  // the bound concerns D^2 u itself
    const std::size_t d = u.dim();

    LaplacianBoundReport rep;
    rep.L = sup_gradient_norm(u);

    const std::size_t chunks = n_chunks();
    std::vector<double> part(chunks, 0.0);

    if (u.has_analytic_hessian()) {
        // Midpoint rule over the centered half-box, one cell per grid cell.
        std::vector<std::size_t> cells(d);
        std::vector<double> lo(d), step(d);
        std::size_t total = 1;
        double cellvol = 1.0;
        for (std::size_t a = 0; a < d; ++a) {
            cells[a] = u.counts()[a] - 1;
            total *= cells[a];
            const double mid = 0.5 * (u.box()[a].lo + u.box()[a].hi);
            const double halfext = 0.25 * (u.box()[a].hi - u.box()[a].lo);
            lo[a] = mid - halfext;
            step[a] = 2.0 * halfext / static_cast<double>(cells[a]);
            cellvol *= step[a];
        }
        std::vector<std::size_t> strides(d, 1);
        for (std::size_t a = d - 1; a-- > 0;) strides[a] = strides[a + 1] * cells[a + 1];
        parallel_for_chunks(total, [&](std::size_t chunk, std::size_t b, std::size_t e) {
            Point p(d);
            for (std::size_t i = b; i < e; ++i) {
                std::size_t rem = i;
                for (std::size_t a = 0; a < d; ++a) {
                    const std::size_t ia = rem / strides[a];
                    rem %= strides[a];
                    p[a] = lo[a] + (static_cast<double>(ia) + 0.5) * step[a];
                }
                const double top = jacobi_eigen(u.analytic_hessian(p)).eigenvalues.front();
                if (top > 0.0) part[chunk] += top;
            }
        });
        double sum = 0.0;
        for (double v : part) sum += v;
        rep.integral = sum * cellvol;
    } else {
        // Riemann sum over interior FD nodes inside the half-box.
        const HessianField hf = fd_hessian(u);
        const InteriorIndexer idx(u);
        double cellvol = 1.0;
        for (std::size_t a = 0; a < d; ++a) cellvol *= u.spacing()[a];
        parallel_for_chunks(hf.at.size(), [&](std::size_t chunk, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const auto m = idx.full_multi(i);
                bool inside = true;
                for (std::size_t a = 0; a < d && inside; ++a) {
                    const double xa = u.coordinate(a, m[a]);
                    const double mid = 0.5 * (u.box()[a].lo + u.box()[a].hi);
                    const double halfext = 0.25 * (u.box()[a].hi - u.box()[a].lo);
                    inside = std::abs(xa - mid) <= halfext;
                }
                if (!inside) continue;
                const double top = jacobi_eigen(hf.at[i]).eigenvalues.front();
                if (top > 0.0) part[chunk] += top;
            }
        });
        double sum = 0.0;
        for (double v : part) sum += v;
        rep.integral = sum * cellvol;
    }

    rep.ratio = rep.integral / (1.0 + rep.L);
    return rep;
}

std::size_t vitali_cover_count(const std::vector<double>& points, std::size_t dim, double r) {
    if (!(r > 0.0)) throw InvalidInput("vitali_cover_count: r > 0 required");
    if (dim == 0 || points.size() % dim != 0) throw InvalidInput("vitali_cover_count: bad points");
    const std::size_t n = points.size() / dim;
    std::vector<std::size_t> centers;
    for (std::size_t i = 0; i < n; ++i) {
        bool covered = false;
        for (std::size_t c : centers) {
            double d2 = 0.0;
            for (std::size_t a = 0; a < dim; ++a) {
                const double delta = points[i * dim + a] - points[c * dim + a];
                d2 += delta * delta;
            }
            if (d2 < 4.0 * r * r) {
                covered = true;
                break;
            }
        }
        if (!covered) centers.push_back(i);
    }
    return centers.size();
}

std::vector<SweepRecord> estimate_sweep(const std::vector<double>& m_values, double theta, int n,
                                        double chain_r) {
    if (m_values.empty()) throw InvalidInput("estimate_sweep: empty M range");
    for (double m : m_values)
        if (!(m >= 1.0)) throw InvalidInput("estimate_sweep: M values must be >= 1");

    std::vector<SweepRecord> records;
    records.reserve(m_values.size());

    for (double M : m_values) {
        const EmbeddedSolution sol = EmbeddedSolution::semiconvex({M, theta, n});
        const PhaseParams params = derive_phase_params(n, sol.phase());
        const PartialRotated& pr = sol.planar();
        const double sphi = params.sin_phi, cphi = params.cos_phi;
        const double tail = sol.tail_coefficient();

        SweepRecord rec;
        rec.M = M;
        rec.lambda1 = std::exp(M);

        // L over the planar source strip plus the tail corners.
        const double xw = 0.95 * pr.source_halfwidth();
        const double yw = pr.source_ycap();
        double gmax2 = 0.0;
        constexpr int kL = 64;
        for (int i = 0; i <= kL; ++i) {
            const double xsrc = -xw + 2.0 * xw * i / kL;
            for (int j = 0; j <= kL; ++j) {
                const double ysrc = -yw + 2.0 * yw * j / kL;
                const auto sj = pr.eval_source(xsrc, ysrc);
                gmax2 = std::max(gmax2, sj.ub1 * sj.ub1 + sj.ub2 * sj.ub2);
            }
        }
        rec.L = std::sqrt(gmax2 + (n - 2) * tail * tail);
        rec.ratio = std::log(rec.lambda1) / (1.0 + rec.L);

        // Chain from 0 to a boundary-adjacent point along the first axis.
        // The gradient spikes through a width-e^{-M} layer at the start of
        // the ray, so the t-samples are graded there (uniform in the
        // asinh-stretched variable) on top of a uniform grid.
        const Box pbox = sol.probe_box();
        Point xstar(n, 0.0);
        xstar[0] = 0.9 * pbox[0].hi;
        std::vector<double> ts;
        {
            constexpr std::size_t kUniform = 5000;
            constexpr std::size_t kGraded = 20000;
            ts.reserve(kUniform + kGraded);
            for (std::size_t i = 0; i < kUniform; ++i)
                ts.push_back(static_cast<double>(i) / static_cast<double>(kUniform - 1));
            const double scale = std::exp(-M);
            const double tau_max = std::asinh(xstar[0] / scale);
            for (std::size_t i = 1; i <= kGraded; ++i) {
                const double tau = tau_max * static_cast<double>(i) / static_cast<double>(kGraded);
                const double t = scale * std::sinh(tau) / xstar[0];
                if (t < 1.0) ts.push_back(t);
            }
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        }
        std::vector<double> vertices;
        vertices.reserve(ts.size() * n);
        Point prev;
        for (const double t : ts) {
            Point p(n, 0.0);
            p[0] = t * xstar[0];
            const auto j = sol.eval(p);
            Point img(n);
            for (int a = 0; a < n; ++a) img[a] = cphi * p[a] + sphi * j.grad[a];
            if (!prev.empty()) {
                double d2 = 0.0;
                for (int a = 0; a < n; ++a) d2 += (img[a] - prev[a]) * (img[a] - prev[a]);
                if (d2 == 0.0) continue;
            }
            vertices.insert(vertices.end(), img.begin(), img.end());
            prev = img;
        }
        const Polyline curve(n, std::move(vertices));
        rec.chain_k = ball_chain(curve, chain_r).k();

        // Area-formula volume of the rotated image of the probe region, in
        // source coordinates; the tail factors are constant.  The integrand
        // carries the same e^M ridge at x = 0, so integrate in tau with
        // x = e^{-M} cos(y) sinh(tau), which flattens it exactly.
        const double tail_factor = cphi + sphi * tail;
        double planar_sum = 0.0;
        constexpr int kVy = 128, kVt = 256;
        const double dy = 2.0 * yw / kVy;
        for (int j = 0; j < kVy; ++j) {
            const double ysrc = -yw + (j + 0.5) * dy;
            const double scale = std::exp(-M) * std::cos(ysrc);
            const double tau_max = std::asinh(xw / scale);
            const double dtau = 2.0 * tau_max / kVt;
            double row = 0.0;
            for (int i = 0; i < kVt; ++i) {
                const double tau = -tau_max + (i + 0.5) * dtau;
                const double xsrc = scale * std::sinh(tau);
                const auto sj = pr.eval_source(xsrc, ysrc);
                const double d11 = cphi + sphi * sj.hess(0, 0);
                const double d22 = cphi + sphi * sj.hess(1, 1);
                const double d12 = sphi * sj.hess(0, 1);
                row += (d11 * d22 - d12 * d12) * sj.det_dt * scale * std::cosh(tau);
            }
            planar_sum += row * dtau;
        }
        rec.volume = planar_sum * dy * std::pow(2.0 * tail_factor, n - 2);

        // Diagnostic Vitali pass over a coarse image sample at r/3.
        std::vector<double> img_points;
        constexpr int kVit = 16;
        for (int i = 0; i <= kVit; ++i) {
            const double xsrc = -xw + 2.0 * xw * i / kVit;
            for (int j = 0; j <= kVit; ++j) {
                const double ysrc = -yw + 2.0 * yw * j / kVit;
                const auto sj = pr.eval_source(xsrc, ysrc);
                Point img(n, 0.0);
                img[0] = cphi * sj.p1 + sphi * sj.ub1;
                img[1] = cphi * sj.p2 + sphi * sj.ub2;
                // tail coordinates at 0 contribute nothing
                img_points.insert(img_points.end(), img.begin(), img.end());
            }
        }
        rec.vitali_n = vitali_cover_count(img_points, n, chain_r / 3.0);

        records.push_back(rec);
    }
    return records;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "M,L,lambda1,chain_k,volume,ratio\n";
    for (const auto& r : records) {
        os << fmt_g10(r.M) << ',' << fmt_g10(r.L) << ',' << fmt_g10(r.lambda1) << ','
           << r.chain_k << ',' << fmt_g10(r.volume) << ',' << fmt_g10(r.ratio) << '\n';
    }
    return os.str();
}

}  // namespace slag
