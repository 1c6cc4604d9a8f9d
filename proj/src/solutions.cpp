#include "slag/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "slag/errors.hpp"
#include "slag/finite_diff.hpp"
#include "slag/linalg.hpp"
#include "slag/num_format.hpp"
#include "slag/rng.hpp"
#include "slag/sl_operator.hpp"

namespace slag {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

GJet g_eval(double s) {
    GJet j;
    const double root = std::sqrt(1.0 + s * s);
    j.g = s * std::asinh(s) - root;
    j.gp = std::asinh(s);
    j.gpp = 1.0 / root;
    return j;
}

Jet2 pogorelov_eval(const PogorelovSpec& spec, double x, double y) {
    if (!(spec.M >= 1.0)) throw InvalidInput("pogorelov_eval: M >= 1 required");
    if (!(std::abs(x) < 1.0 && std::abs(y) <= 0.999))
        throw InvalidInput("pogorelov_eval: point outside Q (|y| capped at 0.999)");

    const double eM = std::exp(spec.M);
    const double emM = std::exp(-spec.M);
    const double cy = std::cos(y);
    const double sy = std::sin(y);
    const double s = eM * x / cy;
    const GJet gs = g_eval(s);
    const double root = std::sqrt(1.0 + s * s);

    Jet2 j;
    j.value = emM * cy * gs.g;
    j.grad = {gs.gp, emM * sy * root};
    j.hess = SymmetricMatrix(2);
    j.hess.set(0, 0, eM / (cy * root));
    j.hess.set(0, 1, s * (sy / cy) / root);
    j.hess.set(1, 1, emM * cy * root + emM * s * s * sy * (sy / cy) / root);
    return j;
}

// ---------------------------------------------------------------------------
// Partial rotation
// ---------------------------------------------------------------------------

PartialRotated::PartialRotated(PartialRotatedSpec spec) : spec_(spec) {
    if (!(spec_.M >= 1.0)) throw InvalidInput("PartialRotated: M >= 1 required");
    if (!(std::abs(spec_.theta) < kPi / 2))
        throw InvalidInput("PartialRotated: theta in (-pi/2, pi/2) required");
    s_ = std::sin(spec_.theta);
    c_ = std::cos(spec_.theta);

    // Shrink the source square until det DT = c + s u_yy clears 0.01.
    rho_ = 1.0;
    for (;;) {
        ycap_ = 0.999 * rho_;
        double mind = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 40; ++i) {
            const double x = -rho_ + 2.0 * rho_ * i / 40.0;
            const double xc = std::min(std::max(x, -0.999999), 0.999999);
            for (int jj = 0; jj <= 40; ++jj) {
                const double y = -ycap_ + 2.0 * ycap_ * jj / 40.0;
                const Jet2 j = pogorelov_eval({spec_.M}, xc, y);
                mind = std::min(mind, c_ + s_ * j.hess(1, 1));
            }
        }
        if (mind >= 0.01) break;
        rho_ *= 0.95;
        if (rho_ < 0.05) throw InvalidInput("PartialRotated: no admissible sub-square found");
    }

    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 40; ++i) {
        const double p1 = 0.95 * rho_ * (-1.0 + 2.0 * i / 40.0);
        const Jet2 j = pogorelov_eval({spec_.M}, p1, ycap_);
        m = std::min(m, c_ * ycap_ + s_ * j.grad[1]);
    }
    image_p2_ = 0.95 * m;
}

PartialRotated::SourceJet PartialRotated::eval_source(double x, double y) const {
    const Jet2 j = pogorelov_eval({spec_.M}, x, y);
    const double uy = j.grad[1];
    const double uxx = j.hess(0, 0);
    const double uxy = j.hess(0, 1);
    const double uyy = j.hess(1, 1);

    SourceJet out;
    out.p1 = x;
    out.p2 = c_ * y + s_ * uy;
    out.ubar = j.value + 0.5 * s_ * c_ * (uy * uy - y * y) - s_ * s_ * y * uy;
    out.ub1 = j.grad[0];
    out.ub2 = -s_ * y + c_ * uy;
    out.det_dt = c_ + s_ * uyy;

    // D^2 ubar * DT = Dp, one 2x2 solve per row.
    const std::vector<double> dt_t = {1.0, s_ * uxy, 0.0, out.det_dt};
    const std::vector<double> row0 = solve_dense(dt_t, {uxx, uxy}, 2);
    const std::vector<double> row1 = solve_dense(dt_t, {c_ * uxy, -s_ + c_ * uyy}, 2);
    out.hess = SymmetricMatrix::from_dense(2, {row0[0], row0[1], row1[0], row1[1]});
    return out;
}

double PartialRotated::invert_y(double p1, double p2) const {
    if (!(std::abs(p1) < 1.0))
        throw InvalidInput("PartialRotated::invert_y: p1 outside the source range");
    auto t2 = [&](double y) {
        const Jet2 j = pogorelov_eval({spec_.M}, p1, y);
        return c_ * y + s_ * j.grad[1];
    };
    double lo = -ycap_, hi = ycap_;
    double flo = t2(lo) - p2, fhi = t2(hi) - p2;
    if (flo > 0.0 || fhi < 0.0)
        throw InvalidInput("PartialRotated::invert_y: point outside the image strip");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = t2(mid) - p2;
        if (fm <= 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    (void)flo;
    (void)fhi;
    return 0.5 * (lo + hi);
}

PartialRotated::SourceJet PartialRotated::eval_image(double p1, double p2) const {
    return eval_source(p1, invert_y(p1, p2));
}

Box PartialRotated::image_box() const {
    return {{-0.95 * rho_, 0.95 * rho_}, {-image_p2_, image_p2_}};
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

EmbeddedSolution::EmbeddedSolution(PartialRotatedSpec planar, int n, double tail, double phase)
    : planar_(planar), n_(n), tail_(tail), phase_(phase) {}

EmbeddedSolution EmbeddedSolution::semiconvex(const EmbeddedSemiconvexSpec& spec) {
    if (spec.n < 3) throw InvalidInput("EmbeddedSolution: n >= 3 required");
    if (!(spec.theta > 0.0 && spec.theta < kPi / 2))
        throw InvalidInput("EmbeddedSolution: semiconvex variant needs theta in (0, pi/2)");
    const double phase = kPi / 2 - (spec.n - 1) * spec.theta;
    return EmbeddedSolution({spec.M, spec.theta}, spec.n, -std::tan(spec.theta), phase);
}

EmbeddedSolution EmbeddedSolution::convex(const EmbeddedConvexSpec& spec) {
    if (spec.n < 3) throw InvalidInput("EmbeddedSolution: n >= 3 required");
    if (!(spec.theta > -kPi / 2 && spec.theta <= 0.0))
        throw InvalidInput("EmbeddedSolution: convex variant needs theta in (-pi/2, 0]");
    if (!(spec.A >= 0.0)) throw InvalidInput("EmbeddedSolution: convex variant needs A >= 0");
    const double phase = kPi / 2 - spec.theta + (spec.n - 2) * std::atan(spec.A);
    return EmbeddedSolution({spec.M, spec.theta}, spec.n, spec.A, phase);
}

EmbeddedSolution::Jet EmbeddedSolution::eval(const Point& p) const {
    if (p.size() != static_cast<std::size_t>(n_)) throw InvalidInput("EmbeddedSolution: bad point dim");
    const PartialRotated::SourceJet pj = planar_.eval_image(p[0], p[1]);

    Jet j;
    j.grad.assign(n_, 0.0);
    j.hess = SymmetricMatrix(n_);

    double tailsum = 0.0;
    for (int i = 2; i < n_; ++i) tailsum += p[i] * p[i];
    j.w = pj.ubar + 0.5 * tail_ * tailsum;
    j.grad[0] = pj.ub1;
    j.grad[1] = pj.ub2;
    for (int i = 2; i < n_; ++i) j.grad[i] = tail_ * p[i];
    j.hess.set(0, 0, pj.hess(0, 0));
    j.hess.set(0, 1, pj.hess(0, 1));
    j.hess.set(1, 1, pj.hess(1, 1));
    for (int i = 2; i < n_; ++i) j.hess.set(i, i, tail_);

    const double mean = 0.5 * (pj.hess(0, 0) + pj.hess(1, 1));
    const double rad = std::hypot(0.5 * (pj.hess(0, 0) - pj.hess(1, 1)), pj.hess(0, 1));
    const double mu1 = mean + rad;
    const double mu2 = mean - rad;
    j.ubar_min_eig = mu2;
    j.F = eig_angle(mu1) + eig_angle(mu2) + (n_ - 2) * std::atan(tail_);
    return j;
}

Box EmbeddedSolution::probe_box() const {
    Box b = planar_.image_box();
    for (int i = 2; i < n_; ++i) b.push_back({-1.0, 1.0});
    return b;
}

// ---------------------------------------------------------------------------
// SingularPhi
// ---------------------------------------------------------------------------

SingularPhi::SingularPhi(SingularPhiSpec spec) : spec_(std::move(spec)) {
    if (!(spec_.lambda > 0.0)) throw InvalidInput("SingularPhi: lambda > 0 required");
    for (double ai : spec_.a)
        if (ai == 0.0) throw InvalidInput("SingularPhi: a_i must be nonzero");
}

SingularPhi::Jet SingularPhi::eval(const Point& x) const {
    const int nn = n();
    if (x.size() != static_cast<std::size_t>(nn)) throw InvalidInput("SingularPhi: bad point dim");
    if (!(std::abs(x[2]) <= 0.5)) throw InvalidInput("SingularPhi: |x3| <= 1/2 required");

    const double lam = spec_.lambda;
    const double a = 1.0 / (1.0 + x[2]);
    const double b = 1.0 / (1.0 - x[2]);
    const double a3 = a * a * a;
    const double b3 = b * b * b;

    Jet j;
    j.value = 0.5 * lam * (a * x[0] * x[0] + b * x[1] * x[1]);
    for (int i = 3; i < nn; ++i) {
        const double ai = spec_.a[i - 3];
        j.value += 0.5 * ai * x[i] * x[i] + x[i] * x[i] * x[i] * x[i] / 12.0;
    }

    j.hess = SymmetricMatrix(nn);
    j.hess.set(0, 0, lam * a);
    j.hess.set(1, 1, lam * b);
    j.hess.set(0, 2, -lam * a * a * x[0]);
    j.hess.set(1, 2, lam * b * b * x[1]);
    j.hess.set(2, 2, lam * (a3 * x[0] * x[0] + b3 * x[1] * x[1]));
    for (int i = 3; i < nn; ++i) j.hess.set(i, i, spec_.a[i - 3] + x[i] * x[i]);

    const double h = lam * (a * b + 0.5 * a3 * x[0] * x[0] + 0.5 * b3 * x[1] * x[1]);
    const double mixed = 2.0 * a * b * x[2] + (b3 * x[1] * x[1] - a3 * x[0] * x[0]);
    const double g2 = 0.25 * mixed * mixed + a3 * b3 * x[0] * x[0] * x[1] * x[1];
    const double gg = lam * std::sqrt(g2);

    j.closed_spectrum = {h + gg, h - gg, 0.0};
    for (int i = 3; i < nn; ++i) j.closed_spectrum.push_back(spec_.a[i - 3] + x[i] * x[i]);
    std::sort(j.closed_spectrum.begin(), j.closed_spectrum.end(), std::greater<double>());

    j.F = 0.0;
    for (double ev : j.closed_spectrum) j.F += eig_angle(ev);
    return j;
}

double SingularPhi::phase_at(const Point& x) const { return eval(x).F; }

namespace {
std::vector<double> nondegen_closed_diag(const SingularPhi& phi) {
    const double lam = phi.spec().lambda;
    const double den = 1.0 + lam * lam;
    std::vector<double> d(phi.n(), 0.0);
    d[0] = 2.0 * lam / den;
    d[1] = 2.0 * lam / den;
    d[2] = 4.0 * lam / den - 4.0 * lam * lam * lam / (den * den);
    for (int i = 3; i < phi.n(); ++i) {
        const double ai = phi.spec().a[i - 3];
        d[i] = 2.0 / (1.0 + ai * ai);
    }
    return d;
}
}  // namespace

NonDegenReport nondegen_check(const SingularPhi& phi, double h) {
    const int nn = phi.n();
    NonDegenReport rep;
    rep.h = h;
    rep.closed_hessian = SymmetricMatrix::diagonal(nondegen_closed_diag(phi));
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nn; ++i)
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, rep.closed_hessian(i, i));

    Box box(nn);
    for (auto& iv : box) iv = {-2.0 * h, 2.0 * h};
    AnalyticEvaluators ev;
    ev.value = [&phi](const Point& x) { return phi.phase_at(x); };
    const GridFunction patch = GridFunction::sample(box, std::vector<std::size_t>(nn, 5), ev);
    const HessianField hf = fd_hessian(patch);
    std::size_t center = 0;
    for (int axis = 0; axis < nn; ++axis) {
        std::size_t stride = 1;
        for (int b = axis + 1; b < nn; ++b) stride *= 3;
        center += stride;
    }
    rep.fd_hessian = hf.at[center];
    rep.max_entry_gap = rep.closed_hessian.max_abs_diff(rep.fd_hessian);
    return rep;
}

SublevelReport sublevel_diameter(const SingularPhi& phi, double epsilon,
                                 std::size_t nodes_per_axis, double box_halfwidth) {
    if (!(epsilon > 0.0)) throw InvalidInput("sublevel_diameter: epsilon > 0 required");
    const int nn = phi.n();
    if (nodes_per_axis % 2 == 0) ++nodes_per_axis;
    if (nodes_per_axis < 5) nodes_per_axis = 5;

    double hw = box_halfwidth;
    if (hw <= 0.0) {
        const std::vector<double> diag = nondegen_closed_diag(phi);
        const double mu = *std::min_element(diag.begin(), diag.end());
        hw = std::min(0.45, 3.0 * epsilon * std::sqrt(2.0 / mu));
    }
    if (hw > 0.45) hw = 0.45;

    double total_d = 1.0;
    for (int i = 0; i < nn; ++i) total_d *= static_cast<double>(nodes_per_axis);
    if (total_d > 2e7) throw InvalidInput("sublevel_diameter: grid too large, reduce nodes_per_axis");
    const std::size_t total = static_cast<std::size_t>(total_d);

    const std::size_t per = nodes_per_axis;
    const double grid_h = 2.0 * hw / static_cast<double>(per - 1);
    std::vector<std::size_t> strides(nn, 1);
    for (int a = nn - 1; a-- > 0;) strides[a] = strides[a + 1] * per;

    auto point_of = [&](std::size_t flat) {
        Point p(nn);
        for (int a = 0; a < nn; ++a) {
            const std::size_t ia = flat / strides[a];
            flat %= strides[a];
            p[a] = -hw + static_cast<double>(ia) * grid_h;
        }
        return p;
    };

    const double threshold = phi.phase_at(Point(nn, 0.0)) + epsilon * epsilon;

    std::size_t center = 0;
    for (int a = 0; a < nn; ++a) center += (per / 2) * strides[a];

    std::vector<char> in_comp(total, 0);
    std::deque<std::size_t> queue;
    in_comp[center] = 1;
    queue.push_back(center);
    std::vector<std::size_t> component;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        component.push_back(cur);
        std::size_t rem = cur;
        std::vector<std::size_t> multi(nn);
        for (int a = 0; a < nn; ++a) {
            multi[a] = rem / strides[a];
            rem %= strides[a];
        }
        for (int a = 0; a < nn; ++a) {
            if (multi[a] == 0 || multi[a] + 1 >= per)
                throw InvalidInput("sublevel_diameter: component touches the probe box, epsilon too large");
            for (int dir = -1; dir <= 1; dir += 2) {
                const std::size_t nb_idx = dir < 0 ? cur - strides[a] : cur + strides[a];
                if (in_comp[nb_idx]) continue;
                if (phi.phase_at(point_of(nb_idx)) < threshold) {
                    in_comp[nb_idx] = 1;
                    queue.push_back(nb_idx);
                }
            }
        }
    }

    // Extremes of a lattice component lie on its surface.
    std::vector<Point> surface;
    for (std::size_t flat : component) {
        bool surf = false;
        for (int a = 0; a < nn && !surf; ++a)
            if (!in_comp[flat - strides[a]] || !in_comp[flat + strides[a]]) surf = true;
        if (surf) surface.push_back(point_of(flat));
    }

    SublevelReport rep;
    rep.epsilon = epsilon;
    rep.component_nodes = component.size();
    rep.grid_h = grid_h;
    double best = 0.0;
    for (std::size_t i = 0; i < surface.size(); ++i)
        for (std::size_t j = i + 1; j < surface.size(); ++j) {
            double d2 = 0.0;
            for (int a = 0; a < nn; ++a) d2 += (surface[i][a] - surface[j][a]) * (surface[i][a] - surface[j][a]);
            best = std::max(best, d2);
        }
    rep.diameter = std::sqrt(best);
    return rep;
}

SharpnessResult sharpness_parameters(int n, double Theta, double eps,
                                     std::optional<double> delta) {
    if (!(eps >= 0.0)) throw InvalidInput("sharpness_parameters: eps >= 0 required");
    SharpnessResult out;
    if (Theta >= kPi / 2) {
        if (n < 4) throw InvalidInput("sharpness_parameters: case 1 requires n >= 4");
        const double hi = (n - 2) * (kPi / 2);
        if (!(Theta < hi)) throw InvalidInput("sharpness_parameters: Theta outside [pi/2, (n-2)pi/2)");
        const double d = delta.value_or(0.25 * (hi - Theta));
        if (!(d > 0.0 && d < 0.5 * (hi - Theta)))
            throw InvalidInput("sharpness_parameters: delta outside (0, ((n-2)pi/2 - Theta)/2)");
        out.case_id = 1;
        out.delta = d;
        out.lambda = std::tan(0.5 * (kPi - d));
        const double target = (Theta - hi + d - eps * eps) / (n - 3);
        if (!(target > -kPi / 2 && target < 0.0))
            throw InvalidInput("sharpness_parameters: infeasible, atan(A) target outside (-pi/2, 0)");
        out.A = std::tan(target);
        const double f0 = 2.0 * std::atan(out.lambda) + (n - 3) * std::atan(*out.A);
        const double fu = f0 + eps * eps + (kPi / 2) * (2 - n + 2 * (n - 3));
        out.phase_residual = fu - Theta;
    } else {
        if (n < 3) throw InvalidInput("sharpness_parameters: case 2 requires n >= 3");
        if (!(Theta > -(n - 2) * (kPi / 2)))
            throw InvalidInput("sharpness_parameters: Theta outside (-(n-2)pi/2, pi/2)");
        const double theta = (kPi / 2 - Theta) / (n - 1);
        const double ang = theta + eps * eps / (n - 1);
        if (!(ang < kPi / 2)) throw InvalidInput("sharpness_parameters: infeasible, angle reaches pi/2");
        out.case_id = 2;
        out.lambda = 1.0 / std::tan(ang);
        const double f0 = (n - 1) * std::atan(out.lambda);
        const double fu = f0 + eps * eps - (n - 2) * (kPi / 2);
        out.phase_residual = fu - Theta;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports and JSON plumbing
// ---------------------------------------------------------------------------

std::string residual_report_json(const ResidualReport& r) {
    std::ostringstream os;
    os << "{\"equation\":\"" << r.equation << "\",\"max_residual\":" << fmt_g17(r.max_residual)
       << ",\"probes\":" << r.probes << ",\"h\":" << fmt_g17(r.h) << "}";
    return os.str();
}

std::string residual_report_csv_row(const ResidualReport& r) {
    std::ostringstream os;
    os << r.equation << ',' << fmt_g10(r.max_residual) << ',' << r.probes << ',' << fmt_g10(r.h);
    return os.str();
}

ExampleSpec parse_example_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("example spec: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("variant"))
        throw InvalidInput("example spec: need an object with a 'variant' field");
    const std::string variant = j.at("variant").get<std::string>();

    auto need = [&](const char* key) -> double {
        if (!j.contains(key)) throw InvalidInput(std::string("example spec: missing field ") + key);
        return j.at(key).get<double>();
    };

    if (variant == "PogorelovSL") return PogorelovSpec{need("M")};
    if (variant == "PartialRotated") return PartialRotatedSpec{need("M"), need("theta")};
    if (variant == "EmbeddedSemiconvex")
        return EmbeddedSemiconvexSpec{need("M"), need("theta"), static_cast<int>(need("n"))};
    if (variant == "EmbeddedConvex")
        return EmbeddedConvexSpec{need("M"), need("theta"), need("A"), static_cast<int>(need("n"))};
    if (variant == "SingularPhi") {
        SingularPhiSpec s;
        s.lambda = need("lambda");
        if (j.contains("a")) s.a = j.at("a").get<std::vector<double>>();
        return s;
    }
    throw InvalidInput("example spec: unknown variant " + variant);
}

double verify_tolerance(const std::string& equation) {
    if (equation == "det_one") return 1e-9;
    if (equation == "uxx_origin") return 1e-12;
    if (equation == "uy_display") return 1e-10;
    if (equation == "uyy_display") return 1e-10;
    if (equation == "g_identity") return 1e-13;
    if (equation == "det_form") return 1e-7;
    if (equation == "phase_constancy") return 1e-7;
    if (equation == "ubar11_origin") return 1e-10;
    if (equation == "w_semiconvex_margin") return 1e-8;
    if (equation == "ubar_margin_positive") return 1e-9;
    if (equation == "convexity_margin") return 1e-10;
    if (equation == "spectrum_match") return 1e-9;
    if (equation == "rank_deficiency") return 1e-10;
    if (equation == "nondegen_fd_gap") return 1e-4;
    if (equation == "nondegen_min_eig") return std::numeric_limits<double>::infinity();
    if (equation == "nondegen_min_eig_deficit") return 0.0;
    throw InvalidInput("verify_tolerance: unknown equation tag " + equation);
}

namespace {

std::vector<ResidualReport> verify_pogorelov(const PogorelovSpec& spec, std::size_t probes,
                                             std::uint64_t seed) {
    Rng rng(seed);
    double det_res = 0.0, uy_res = 0.0, uyy_res = 0.0;
    const double emM2 = std::exp(-2.0 * spec.M);
    for (std::size_t i = 0; i < probes; ++i) {
        const double x = rng.uniform(-0.9, 0.9);
        const double y = rng.uniform(-0.9, 0.9);
        const Jet2 j = pogorelov_eval(spec, x, y);
        const double det = j.hess(0, 0) * j.hess(1, 1) - j.hess(0, 1) * j.hess(0, 1);
        det_res = std::max(det_res, std::abs(det - 1.0));

        const double cy = std::cos(y);
        const double disp_uy = std::abs(std::sin(y)) * std::sqrt(emM2 + x * x / (cy * cy));
        uy_res = std::max(uy_res, std::abs(std::abs(j.grad[1]) - disp_uy));

        const double base = std::sqrt(emM2 * cy * cy + x * x);
        const double ty = std::tan(y);
        const double disp_uyy = base + x * x * ty * ty / base;
        uyy_res = std::max(uyy_res, std::abs(j.hess(1, 1) - disp_uyy));
    }
    const Jet2 origin = pogorelov_eval(spec, 0.0, 0.0);
    const double eM = std::exp(spec.M);

    double g_res = 0.0;
    const double svals[] = {-1000.0, -10.0, -0.5, 0.5, 10.0, 1000.0};
    for (double s : svals) {
        const GJet gj = g_eval(s);
        const double root = std::sqrt(1.0 + s * s);
        // relative: the terms grow like s log s and cancel
        g_res = std::max(g_res, std::abs(s * gj.gp - gj.g - root) / root);
    }

    return {
        {"det_one", det_res, probes, 0.0},
        {"uxx_origin", std::abs(origin.hess(0, 0) - eM) / eM, 1, 0.0},
        {"uy_display", uy_res, probes, 0.0},
        {"uyy_display", uyy_res, probes, 0.0},
        {"g_identity", g_res, 6, 0.0},
    };
}

std::vector<ResidualReport> verify_partial(const PartialRotatedSpec& spec, std::size_t probes,
                                           std::uint64_t seed) {
    const PartialRotated pr(spec);
    Rng rng(seed);
    const double s = pr.sin_theta(), c = pr.cos_theta();
    double det_form = 0.0, phase_res = 0.0;
    const double target = kPi / 2 - spec.theta;
    for (std::size_t i = 0; i < probes; ++i) {
        const double x = rng.uniform(-0.9, 0.9) * pr.source_halfwidth();
        const double y = rng.uniform(-0.9, 0.9) * pr.source_ycap();
        const auto j = pr.eval_source(x, y);
        const double det =
            j.hess(0, 0) * j.hess(1, 1) - j.hess(0, 1) * j.hess(0, 1);
        const double lap = j.hess(0, 0) + j.hess(1, 1);
        det_form = std::max(det_form, std::abs(c * (1.0 - det) - s * lap));

        const double mean = 0.5 * (j.hess(0, 0) + j.hess(1, 1));
        const double rad = std::hypot(0.5 * (j.hess(0, 0) - j.hess(1, 1)), j.hess(0, 1));
        const double f = eig_angle(mean + rad) + eig_angle(mean - rad);
        phase_res = std::max(phase_res, std::abs(f - target));
    }
    const auto origin = pr.eval_source(0.0, 0.0);
    const double eM = std::exp(spec.M);
    return {
        {"det_form", det_form, probes, 0.0},
        {"phase_constancy", phase_res, probes, 0.0},
        {"ubar11_origin", std::abs(origin.hess(0, 0) - eM) / eM, 1, 0.0},
    };
}

std::vector<ResidualReport> verify_embedded(const EmbeddedSolution& sol, bool semiconvex,
                                            std::size_t probes, std::uint64_t seed) {
    Rng rng(seed);
    const Box box = sol.probe_box();
    double phase_res = 0.0;
    double w_margin = std::numeric_limits<double>::infinity();
    double ubar_margin = std::numeric_limits<double>::infinity();
    const double bound = std::tan(sol.theta());
    for (std::size_t i = 0; i < probes; ++i) {
        Point p(sol.n());
        for (int a = 0; a < sol.n(); ++a) p[a] = rng.uniform(box[a].lo, box[a].hi);
        const auto j = sol.eval(p);
        phase_res = std::max(phase_res, std::abs(j.F - sol.phase()));
        const double lmin = jacobi_eigen(j.hess).eigenvalues.back();
        if (semiconvex) {
            w_margin = std::min(w_margin, lmin + bound);
            ubar_margin = std::min(ubar_margin, j.ubar_min_eig + bound);
        } else {
            w_margin = std::min(w_margin, lmin);
        }
    }
    std::vector<ResidualReport> out = {{"phase_constancy", phase_res, probes, 0.0}};
    if (semiconvex) {
        out.push_back({"w_semiconvex_margin", std::max(0.0, -w_margin), probes, 0.0});
        out.push_back({"ubar_margin_positive", std::max(0.0, -ubar_margin), probes, 0.0});
    } else {
        out.push_back({"convexity_margin", std::max(0.0, -w_margin), probes, 0.0});
    }
    return out;
}

std::vector<ResidualReport> verify_phi(const SingularPhiSpec& spec, std::size_t probes,
                                       std::uint64_t seed) {
    const SingularPhi phi(spec);
    Rng rng(seed);
    double spec_res = 0.0, rank_res = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
        Point x(phi.n());
        for (int a = 0; a < phi.n(); ++a) x[a] = rng.uniform(-0.5, 0.5);
        const auto j = phi.eval(x);
        const EigenDecomposition eig = jacobi_eigen(j.hess);
        for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k)
            spec_res = std::max(spec_res, std::abs(eig.eigenvalues[k] - j.closed_spectrum[k]));
        double zero = std::numeric_limits<double>::infinity();
        for (double ev : eig.eigenvalues) zero = std::min(zero, std::abs(ev));
        rank_res = std::max(rank_res, zero);
    }
    const NonDegenReport nd = nondegen_check(phi);
    return {
        {"spectrum_match", spec_res, probes, 0.0},
        {"rank_deficiency", rank_res, probes, 0.0},
        {"nondegen_fd_gap", nd.max_entry_gap, 1, nd.h},
        // the eigenvalue itself, informational
        {"nondegen_min_eig", nd.min_eigenvalue, 1, nd.h},
        {"nondegen_min_eig_deficit", std::max(0.0, -nd.min_eigenvalue), 1, nd.h},
    };
}

}  // namespace

std::vector<ResidualReport> verify_example(const ExampleSpec& spec, std::size_t probes,
                                           std::uint64_t seed) {
    return std::visit(
        [&](const auto& s) -> std::vector<ResidualReport> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PogorelovSpec>) {
                return verify_pogorelov(s, probes, seed);
            } else if constexpr (std::is_same_v<T, PartialRotatedSpec>) {
                return verify_partial(s, probes, seed);
            } else if constexpr (std::is_same_v<T, EmbeddedSemiconvexSpec>) {
                return verify_embedded(EmbeddedSolution::semiconvex(s), true, probes, seed);
            } else if constexpr (std::is_same_v<T, EmbeddedConvexSpec>) {
                return verify_embedded(EmbeddedSolution::convex(s), false, probes, seed);
            } else {
                return verify_phi(s, probes, seed);
            }
        },
        spec);
}

}  // namespace slag
