#include "slag/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slag/errors.hpp"
#include "slag/finite_diff.hpp"
#include "slag/legendre.hpp"
#include "slag/linalg.hpp"
#include "slag/num_format.hpp"
#include "slag/parallel.hpp"
#include "slag/rng.hpp"
#include "slag/sl_operator.hpp"

namespace slag {

namespace {
constexpr double kPi = 3.14159265358979323846;

SymmetricMatrix shift_eig_angles(const SymmetricMatrix& m, double shift) {
    if (shift == 0.0) return m;
    const EigenDecomposition eig = jacobi_eigen(m);
    std::vector<double> shifted(eig.eigenvalues.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) {
        const double angle = eig_angle(eig.eigenvalues[i]) + shift;
        if (!(angle > -kPi / 2 && angle < kPi / 2))
            throw InapplicableInput("hessian rotation out of range");
        shifted[i] = std::tan(angle);
    }
    return from_spectrum(shifted, eig.frame);
}
}  // namespace

SymmetricMatrix hessian_rotate(const SymmetricMatrix& m, double phi) {
    if (!(phi > -kPi / 2 && phi < kPi / 2)) throw InvalidInput("hessian_rotate: |phi| < pi/2 required");
    return shift_eig_angles(m, -phi);
}

SymmetricMatrix hessian_unrotate(const SymmetricMatrix& mbar, double phi) {
    if (!(phi > -kPi / 2 && phi < kPi / 2)) throw InvalidInput("hessian_unrotate: |phi| < pi/2 required");
    return shift_eig_angles(mbar, phi);
}

RotatedGraph rotate_function(const GridFunction& u, const PhaseParams& params, double K) {
    const std::size_t d = u.dim();
    if (static_cast<std::size_t>(params.n) != d)
        throw InvalidInput("rotate_function: params.n must match grid dimension");

    const double s = params.sin_phi;
    const double c = params.cos_phi;

    RotatedGraph g;
    g.params = params;
    g.dim = d;

    const InteriorIndexer idx(u);
    const std::size_t N = idx.size();
    g.x.resize(N * d);
    g.xbar.resize(N * d);
    g.ybar.resize(N * d);
    g.ubar.resize(N);

    // Source points and gradients at interior nodes.
    std::vector<double> gradients(N * d);
    if (u.has_analytic_gradient()) {
        parallel_for(N, [&](std::size_t k) {
            const auto m = idx.full_multi(k);
            Point p(d);
            for (std::size_t a = 0; a < d; ++a) p[a] = u.coordinate(a, m[a]);
            const Point gr = u.analytic_gradient(p);
            for (std::size_t a = 0; a < d; ++a) {
                g.x[k * d + a] = p[a];
                gradients[k * d + a] = gr[a];
            }
        });
    } else {
        const GradientField gf = fd_gradient(u);
        parallel_for(N, [&](std::size_t k) {
            const auto m = idx.full_multi(k);
            for (std::size_t a = 0; a < d; ++a) {
                g.x[k * d + a] = u.coordinate(a, m[a]);
                gradients[k * d + a] = gf.at(k)[a];
            }
        });
    }

    if (params.phi == 0.0) {
        // Identity rotation: the formula's s -> 0 limit.
        parallel_for(N, [&](std::size_t k) {
            const auto m = idx.full_multi(k);
            for (std::size_t a = 0; a < d; ++a) {
                g.xbar[k * d + a] = g.x[k * d + a];
                g.ybar[k * d + a] = gradients[k * d + a];
            }
            g.ubar[k] = u.value_at(m);
        });
        return g;
    }

    const SemiconvexityMargin cert = semiconvexity_certify(u, K);
    if (cert.margin < -1e-9)
        throw InapplicableInput("rotate_function: input is not K-semi-convex on the grid");
    if (!(c - s * K > 0.0))
        throw InapplicableInput("rotate_function: need K < cot(phi) for a uniformly convex transform");

    // V = s u + c |x|^2 / 2 on the full grid, conjugated at the image points.
    std::vector<double> vvals(u.node_count());
    parallel_for(u.node_count(), [&](std::size_t i) {
        const Point p = u.node_point(i);
        double r2 = 0.0;
        for (double t : p) r2 += t * t;
        vvals[i] = s * u.value_at(i) + 0.5 * c * r2;
    });
    const GridFunction vfun(u.box(), u.counts(), std::move(vvals));

    std::vector<Point> queries(N, Point(d));
    parallel_for(N, [&](std::size_t k) {
        for (std::size_t a = 0; a < d; ++a) {
            const double xb = c * g.x[k * d + a] + s * gradients[k * d + a];
            const double yb = -s * g.x[k * d + a] + c * gradients[k * d + a];
            g.xbar[k * d + a] = xb;
            g.ybar[k * d + a] = yb;
            queries[k][a] = xb;
        }
    });

    const ConjugateResult conj = conjugate(vfun, queries);
    parallel_for(N, [&](std::size_t k) {
        double r2 = 0.0;
        for (std::size_t a = 0; a < d; ++a) r2 += g.xbar[k * d + a] * g.xbar[k * d + a];
        g.ubar[k] = 0.5 * (c / s) * r2 - conj.values[k] / s;
    });
    return g;
}

double scattered_gradient_residual(const RotatedGraph& g, std::size_t max_checks,
                                   std::uint64_t seed) {
    const std::size_t N = g.size();
    const std::size_t d = g.dim;
    if (N < 2 * d + 2) throw InvalidInput("scattered_gradient_residual: too few samples");
    const std::size_t k_neighbors = 2 * d + 1;

    Rng rng(seed);
    std::vector<std::size_t> checks;
    if (N <= max_checks) {
        checks.resize(N);
        for (std::size_t i = 0; i < N; ++i) checks[i] = i;
    } else {
        checks.resize(max_checks);
        for (auto& c : checks) c = rng.index(N);
    }

    double worst = 0.0;
    std::vector<double> worst_part(n_chunks(), 0.0);
    parallel_for_chunks(checks.size(), [&](std::size_t chunk, std::size_t b, std::size_t e) {
        std::vector<std::pair<double, std::size_t>> dist(N);
        for (std::size_t ci = b; ci < e; ++ci) {
            const std::size_t j = checks[ci];
            const double* xj = g.xbar.data() + j * d;
            for (std::size_t i = 0; i < N; ++i) {
                const double* xi = g.xbar.data() + i * d;
                double r2 = 0.0;
                for (std::size_t a = 0; a < d; ++a) r2 += (xi[a] - xj[a]) * (xi[a] - xj[a]);
                dist[i] = {r2, i};
            }
            std::partial_sort(dist.begin(), dist.begin() + k_neighbors + 1, dist.end());

            // Weighted least-squares affine fit over the neighbors (self included).
            const std::size_t m = k_neighbors + 1;
            double rbar = 0.0;
            for (std::size_t t = 1; t < m; ++t) rbar += std::sqrt(dist[t].first);
            rbar = std::max(rbar / static_cast<double>(m - 1), 1e-300);

            const std::size_t dim1 = d + 1;
            std::vector<double> ata(dim1 * dim1, 0.0);
            std::vector<double> atb(dim1, 0.0);
            for (std::size_t t = 0; t < m; ++t) {
                const std::size_t i = dist[t].second;
                const double w = std::exp(-dist[t].first / (rbar * rbar));
                std::vector<double> row(dim1);
                row[0] = 1.0;
                for (std::size_t a = 0; a < d; ++a)
                    row[a + 1] = g.xbar[i * d + a] - xj[a];
                for (std::size_t r = 0; r < dim1; ++r) {
                    for (std::size_t cc = 0; cc < dim1; ++cc) ata[r * dim1 + cc] += w * row[r] * row[cc];
                    atb[r] += w * row[r] * g.ubar[i];
                }
            }
            const std::vector<double> beta = solve_dense(ata, atb, dim1);
            double err = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                const double delta = beta[a + 1] - g.ybar[j * d + a];
                err += delta * delta;
            }
            worst_part[chunk] = std::max(worst_part[chunk], std::sqrt(err));
        }
    });
    for (double v : worst_part) worst = std::max(worst, v);
    return worst;
}

double subsolution_step1_margin(const Spectrum& spec, const PhaseParams& params, double pre_tol,
                                double theta_inflation) {
    if (spec.size() != static_cast<std::size_t>(params.n))
        throw InvalidInput("subsolution_step1_margin: dimension mismatch");
    const double top_angle = eig_angle(spec.top());
    if (top_angle < kPi / 2 - params.phi - pre_tol)
        throw InapplicableInput("subsolution_step1_margin: top eigen-angle below pi/2 - phi");
    const double floor = -std::tan(params.theta + theta_inflation + params.phi);
    if (spec.bottom() < floor - pre_tol)
        throw InapplicableInput("subsolution_step1_margin: semi-convexity floor violated");
    return sl_operator(spec) - params.rotated_phase();
}

double subsolution_step1_margin(const SymmetricMatrix& pbar, const PhaseParams& params,
                                double pre_tol, double theta_inflation) {
    return subsolution_step1_margin(spectrum_of(pbar), params, pre_tol, theta_inflation);
}

double gradient_image_volume(const GridFunction& u, const PhaseParams& params) {
    const std::size_t d = u.dim();
    if (static_cast<std::size_t>(params.n) != d)
        throw InvalidInput("gradient_image_volume: params.n must match grid dimension");
    const double s = params.sin_phi;
    const double c = params.cos_phi;

    double cellvol = 1.0;
    for (std::size_t a = 0; a < d; ++a) cellvol *= u.spacing()[a];

    const std::size_t chunks = n_chunks();
    std::vector<double> part(chunks, 0.0);

    auto det_at = [&](const SymmetricMatrix& hess) {
        return (hess * s).shifted(c).determinant();
    };

    if (u.has_analytic_hessian()) {
        // Midpoint rule on cell centers.
        std::vector<std::size_t> cells(d);
        std::size_t total = 1;
        for (std::size_t a = 0; a < d; ++a) {
            cells[a] = u.counts()[a] - 1;
            total *= cells[a];
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
                    p[a] = u.box()[a].lo + (static_cast<double>(ia) + 0.5) * u.spacing()[a];
                }
                part[chunk] += det_at(u.analytic_hessian(p));
            }
        });
    } else {
        const HessianField hf = fd_hessian(u);
        parallel_for_chunks(hf.at.size(), [&](std::size_t chunk, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) part[chunk] += det_at(hf.at[i]);
        });
    }

    double sum = 0.0;
    for (double v : part) sum += v;
    return sum * cellvol;
}

std::string rotated_graph_to_json(const RotatedGraph& g) {
    std::ostringstream os;
    const auto& p = g.params;
    os << "{\"params\":{\"n\":" << p.n << ",\"Theta\":" << fmt_g17(p.Theta) << ",\"theta\":"
       << fmt_g17(p.theta) << ",\"delta\":" << fmt_g17(p.delta) << ",\"phi\":" << fmt_g17(p.phi)
       << ",\"sin_phi\":" << fmt_g17(p.sin_phi) << ",\"cos_phi\":" << fmt_g17(p.cos_phi) << "}";
    auto dump = [&](const char* name, const std::vector<double>& arr) {
        os << ",\"" << name << "\":[";
        const std::size_t rows = arr.size() / g.dim;
        for (std::size_t r = 0; r < rows; ++r) {
            os << (r ? ",[" : "[");
            for (std::size_t a = 0; a < g.dim; ++a)
                os << (a ? "," : "") << fmt_g17(arr[r * g.dim + a]);
            os << "]";
        }
        os << "]";
    };
    dump("x", g.x);
    dump("xbar", g.xbar);
    dump("ybar", g.ybar);
    os << ",\"ubar\":[";
    for (std::size_t i = 0; i < g.ubar.size(); ++i) os << (i ? "," : "") << fmt_g17(g.ubar[i]);
    os << "]}";
    return os.str();
}

}  // namespace slag
