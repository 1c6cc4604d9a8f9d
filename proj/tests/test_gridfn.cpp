#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "slag/errors.hpp"
#include "slag/finite_diff.hpp"
#include "slag/grid_function.hpp"
#include "slag/solutions.hpp"
#include "test_util.hpp"

using namespace slag;
using slagtest::kPi;

namespace {

GridFunction sample_values(Box box, std::vector<std::size_t> counts,
                           const std::function<double(const Point&)>& f) {
    GridFunction g = GridFunction::sample(box, counts, AnalyticEvaluators{f, nullptr, nullptr});
    return GridFunction(g.box(), g.counts(), g.values());  // strip the evaluator
}

}  // namespace

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(GridFunction({{0.0, 1.0}}, {4}, std::vector<double>(4, 0.0)), InvalidInput);
    CHECK_THROWS_AS(GridFunction({{0.0, 1.0}}, {5}, std::vector<double>(4, 0.0)), InvalidInput);
    CHECK_THROWS_AS(GridFunction({{1.0, 0.0}}, {5}, std::vector<double>(5, 0.0)), InvalidInput);

    // sampled values must agree with an attached analytic evaluator
    AnalyticEvaluators ev;
    ev.value = [](const Point& x) { return x[0]; };
    GridFunction ok = GridFunction::sample({{0.0, 1.0}}, {5}, ev);
    CHECK(ok.value_at(std::vector<std::size_t>{2}) == 0.5);
}

TEST_CASE("text round-trip is bit exact") {
    Rng rng(1);
    std::vector<double> vals(25);
    for (auto& v : vals) v = rng.uniform(-5.0, 5.0);
    const GridFunction f({{-1.0, 1.0}, {0.0, 2.0}}, {5, 5}, vals);

    std::stringstream ss;
    write_grid_text(ss, f);
    const GridFunction g = read_grid_text(ss);
    CHECK(g.dim() == 2);
    CHECK(g.counts() == f.counts());
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(g.values()[i] == vals[i]);

    std::stringstream bad("2 0.5 0.5 5 5 -1 1 0 2\n1.0\n");
    CHECK_THROWS_AS(read_grid_text(bad), IoError);
}

TEST_CASE("json export carries the grid header") {
    const GridFunction f({{0.0, 1.0}}, {5}, std::vector<double>(5, 1.0));
    const std::string j = grid_to_json(f);
    CHECK(j.find("\"dim\":1") != std::string::npos);
    CHECK(j.find("\"counts\":[5]") != std::string::npos);
}

TEST_CASE("central differences are exact on affine functions") {
    auto f = [](const Point& x) { return 3.0 * x[0] - 2.0 * x[1] + 0.75; };
    const GridFunction g = sample_values({{-1.0, 1.0}, {-1.0, 1.0}}, {9, 9}, f);
    const GradientField grad = fd_gradient(g);
    const InteriorIndexer idx(g);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        CHECK(grad.at(k)[0] == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(grad.at(k)[1] == doctest::Approx(-2.0).epsilon(1e-14));
    }
}

TEST_CASE("second differences are exact on quadratics") {
    SymmetricMatrix m(2);
    m.set(0, 0, 1.5);
    m.set(1, 1, -0.5);
    m.set(0, 1, 0.75);
    auto f = [&](const Point& x) {
        return 0.5 * (m(0, 0) * x[0] * x[0] + m(1, 1) * x[1] * x[1]) + m(0, 1) * x[0] * x[1];
    };
    const GridFunction g = sample_values({{-1.0, 1.0}, {-1.0, 1.0}}, {9, 9}, f);
    const HessianField hf = fd_hessian(g);
    for (const auto& h : hf.at) CHECK(h.max_abs_diff(m) <= 1e-12);
    CHECK(hf.stencil.scheme == "central-2");
}

TEST_CASE("gradient of the Pogorelov potential against the closed form") {
    // small patch of spacing 1e-3 around (0.3, 0.2)
    const double h = 1e-3;
    const PogorelovSpec spec{2.0};
    auto f = [&](const Point& p) { return pogorelov_eval(spec, p[0], p[1]).value; };
    Box box = {{0.3 - 3 * h, 0.3 + 3 * h}, {0.2 - 3 * h, 0.2 + 3 * h}};
    const GridFunction g = sample_values(box, {7, 7}, f);
    const GradientField grad = fd_gradient(g);
    const InteriorIndexer idx(g);
    // center interior node = (3,3) in the full grid -> (2,2) interior
    const std::size_t center = 2 * 5 + 2;
    (void)idx;
    const Jet2 oracle = pogorelov_eval(spec, 0.3, 0.2);
    CHECK(std::abs(grad.at(center)[0] - oracle.grad[0]) <= 1e-4);
    CHECK(std::abs(grad.at(center)[1] - oracle.grad[1]) <= 1e-4);
}

TEST_CASE("Pogorelov determinant survives the finite-difference cross-check") {
    const double h = 1e-3;
    const PogorelovSpec spec{2.0};
    auto f = [&](const Point& p) { return pogorelov_eval(spec, p[0], p[1]).value; };
    for (const auto& pt : {Point{0.3, 0.2}, Point{-0.5, 0.4}, Point{0.1, -0.6}}) {
        Box box = {{pt[0] - 3 * h, pt[0] + 3 * h}, {pt[1] - 3 * h, pt[1] + 3 * h}};
        const GridFunction g = sample_values(box, {7, 7}, f);
        const HessianField hf = fd_hessian(g);
        const SymmetricMatrix& m = hf.at[2 * 5 + 2];
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
        CHECK(std::abs(det - 1.0) <= 1e-4);
    }
}

TEST_CASE("quartic diagonal second derivative") {
    const double h = 1e-3;
    auto f = [](const Point& p) { return std::pow(p[0], 4) / 12.0; };
    const GridFunction g = sample_values({{1.0 - 3 * h, 1.0 + 3 * h}}, {7}, f);
    const HessianField hf = fd_hessian(g);
    CHECK(std::abs(hf.at[2](0, 0) - 1.0) <= 2 * h * h);
}

TEST_CASE("Hessian of Phi at the origin against the closed spectrum") {
    const double h = 1e-3;
    const SingularPhi phi({1.3, {0.7}});  // n = 4
    auto f = [&](const Point& p) { return phi.eval(p).value; };
    Box box(4);
    for (auto& iv : box) iv = {-3 * h, 3 * h};
    const GridFunction g = sample_values(box, {7, 7, 7, 7}, f);
    const HessianField hf = fd_hessian(g);
    // center of the 5^4 interior block
    const std::size_t center = ((2 * 5 + 2) * 5 + 2) * 5 + 2;
    const EigenDecomposition eig = jacobi_eigen(hf.at[center]);
    const auto closed = phi.eval(Point(4, 0.0)).closed_spectrum;
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(eig.eigenvalues[i] - closed[i]) <= 1e-6);
}

TEST_CASE("semi-convexity certification margins") {
    const double tan_theta = std::tan(kPi / 4);
    auto f = [&](const Point& x) { return -0.5 * tan_theta * (x[0] * x[0] + x[1] * x[1]); };
    const GridFunction g = sample_values({{-1.0, 1.0}, {-1.0, 1.0}}, {17, 17}, f);
    const SemiconvexityMargin m = semiconvexity_certify(g, tan_theta);
    CHECK(std::abs(m.margin) <= 1e-12);

    auto neg = [](const Point& x) { return -(x[0] * x[0] + x[1] * x[1]); };
    const GridFunction gn = sample_values({{-1.0, 1.0}, {-1.0, 1.0}}, {17, 17}, neg);
    CHECK(semiconvexity_certify(gn, 1.0).margin == doctest::Approx(-1.0).epsilon(1e-12));

    // exact shift monotonicity in K
    const double m0 = semiconvexity_certify(gn, 1.0).margin;
    const double m1 = semiconvexity_certify(gn, 1.25).margin;
    CHECK(m1 - m0 == 0.25);
}

TEST_CASE("embedded solution satisfies the semi-convexity certificate") {
    const EmbeddedSolution sol = EmbeddedSolution::semiconvex({2.0, 0.6, 3});
    const Box pb = sol.probe_box();
    AnalyticEvaluators ev;
    ev.value = [&](const Point& p) { return sol.eval(p).w; };
    ev.hessian = [&](const Point& p) { return sol.eval(p).hess; };
    const GridFunction g = GridFunction::sample(pb, {9, 9, 9}, ev);
    const SemiconvexityMargin m = semiconvexity_certify(g, std::tan(0.6));
    CHECK(m.margin >= -1e-8);
}

TEST_CASE("sup gradient norm") {
    // analytic: attained at the box corner
    AnalyticEvaluators ev;
    ev.value = [](const Point& x) { return 0.5 * x[0] * x[0]; };
    ev.gradient = [](const Point& x) { return Point{x[0]}; };
    const GridFunction g = GridFunction::sample({{-1.0, 1.0}}, {33}, ev);
    CHECK(sup_gradient_norm(g) == 1.0);

    // sampled only: interior nodes stop one h short
    const GridFunction gs(g.box(), g.counts(), g.values());
    CHECK(sup_gradient_norm(gs) == doctest::Approx(1.0 - 1.0 / 16.0).epsilon(1e-12));

    // linear function: exactly |a|
    AnalyticEvaluators lin;
    lin.value = [](const Point& x) { return 2.0 * x[0] - 1.0 * x[1]; };
    lin.gradient = [](const Point&) { return Point{2.0, -1.0}; };
    const GridFunction gl = GridFunction::sample({{-1.0, 1.0}, {-1.0, 1.0}}, {9, 9}, lin);
    CHECK(sup_gradient_norm(gl) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("sup gradient norm of the Pogorelov family") {
    const PogorelovSpec spec{3.0};
    AnalyticEvaluators ev;
    ev.value = [&](const Point& p) { return pogorelov_eval(spec, p[0], p[1]).value; };
    ev.gradient = [&](const Point& p) { return pogorelov_eval(spec, p[0], p[1]).grad; };
    const GridFunction g = GridFunction::sample({{-1.0 + 1e-9, 1.0 - 1e-9}, {-0.999, 0.999}}, {65, 65}, ev);
    const double L = sup_gradient_norm(g);
    // dominated by |u_x| <= asinh(e^3 / cos(1)) ~ 4.31 at the corner
    const Jet2 corner = pogorelov_eval(spec, 1.0 - 1e-9, 0.999);
    const double expected = std::hypot(corner.grad[0], corner.grad[1]);
    CHECK(L == doctest::Approx(expected).epsilon(1e-12));
    // the |u_x| term asinh(e^3/cos 1) dominates; u_y adds ~1.5 at the corner
    CHECK(std::abs(L - std::asinh(std::exp(3.0) / std::cos(1.0))) <= 0.3);
}

TEST_CASE("observed convergence order of the stencils is at least 1.9") {
    AnalyticEvaluators ev;
    ev.value = [](const Point& x) { return std::exp(x[0]) * std::cos(x[1]); };
    ev.gradient = [](const Point& x) {
        return Point{std::exp(x[0]) * std::cos(x[1]), -std::exp(x[0]) * std::sin(x[1])};
    };
    ev.hessian = [](const Point& x) {
        SymmetricMatrix m(2);
        m.set(0, 0, std::exp(x[0]) * std::cos(x[1]));
        m.set(0, 1, -std::exp(x[0]) * std::sin(x[1]));
        m.set(1, 1, -std::exp(x[0]) * std::cos(x[1]));
        return m;
    };

    auto max_errors = [&](std::size_t nodes) {
        const GridFunction g =
            GridFunction::sample({{-1.0, 1.0}, {-1.0, 1.0}}, {nodes, nodes}, ev);
        const GradientField grad = fd_gradient(g);
        const HessianField hess = fd_hessian(g);
        const InteriorIndexer idx(g);
        double ge = 0.0, he = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const auto m = idx.full_multi(k);
            Point x(2);
            for (std::size_t a = 0; a < 2; ++a) x[a] = g.coordinate(a, m[a]);
            const Point gref = g.analytic_gradient(x);
            ge = std::max(ge, std::hypot(grad.at(k)[0] - gref[0], grad.at(k)[1] - gref[1]));
            he = std::max(he, hess.at[k].max_abs_diff(g.analytic_hessian(x)));
        }
        return std::pair<double, double>{ge, he};
    };

    const auto coarse = max_errors(17);   // h = 1/8
    const auto fine = max_errors(33);     // h = 1/16
    CHECK(coarse.first / fine.first >= 3.73);
    CHECK(coarse.second / fine.second >= 3.73);
}

TEST_CASE("gradient evaluator interpolates the interior lattice") {
    auto f = [](const Point& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); };
    const GridFunction g = sample_values({{-1.0, 1.0}, {-1.0, 1.0}}, {17, 17}, f);
    const GradientEvaluator ge(g);
    const Point p = {0.3141, -0.2718};
    const Point grad = ge(p);
    CHECK(std::abs(grad[0] - p[0]) <= 1e-10);
    CHECK(std::abs(grad[1] - p[1]) <= 1e-10);
    CHECK_THROWS_AS(ge(Point{0.99, 0.0}), InvalidInput);
}
