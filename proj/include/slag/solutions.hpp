#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slag/grid_function.hpp"
#include "slag/symmetric_matrix.hpp"

namespace slag {

// ---------------------------------------------------------------------------
// g, the Legendre transform of cosh:  g(s) = s asinh(s) - sqrt(1+s^2).
// Satisfies s g' - g = sqrt(1+s^2) and g'' = (1+s^2)^{-1/2}.
// ---------------------------------------------------------------------------
struct GJet {
    double g = 0.0;
    double gp = 0.0;
    double gpp = 0.0;
};
GJet g_eval(double s);

struct Jet2 {
    double value = 0.0;
    Point grad;
    SymmetricMatrix hess;
};

// ---------------------------------------------------------------------------
// Pogorelov-type family on Q = (-1,1)^2:
//   u(x,y) = e^{-M} cos(y) g(e^M x / cos(y)),   M > 1.
// Convex, det D^2 u = 1, bounded gradient, u_xx(0,0) = e^M.
// ---------------------------------------------------------------------------
struct PogorelovSpec {
    double M = 2.0;
};

/// Exact chain-rule derivatives.  Requires (x,y) in Q with |y| <= 0.999.
Jet2 pogorelov_eval(const PogorelovSpec& spec, double x, double y);

// ---------------------------------------------------------------------------
// Partial rotation of the Pogorelov family in the y variable:
//   T(x,y) = (x, c y + s u_y),   grad ubar(T(x,y)) = (u_x, -s y + c u_y),
// with s = sin(theta), c = cos(theta).  Then F(D^2 ubar) = pi/2 - theta,
// equivalently c (1 - det D^2 ubar) = s * Lap ubar, and
// ubar_11(T(0,0)) = u_xx(0,0) = e^M.
// ---------------------------------------------------------------------------
struct PartialRotatedSpec {
    double M = 2.0;
    double theta = 0.0;  // (-pi/2, pi/2)
};

class PartialRotated {
public:
    explicit PartialRotated(PartialRotatedSpec spec);

    const PartialRotatedSpec& spec() const { return spec_; }
    double sin_theta() const { return s_; }
    double cos_theta() const { return c_; }
    /// Source half-width: T is restricted to the sub-square where
    /// det DT >= 0.01, found by shrinking.
    double source_halfwidth() const { return rho_; }
    double source_ycap() const { return ycap_; }

    struct SourceJet {
        double p1 = 0.0, p2 = 0.0;  // T(x, y)
        double ubar = 0.0;
        double ub1 = 0.0, ub2 = 0.0;  // grad ubar at T(x, y)
        SymmetricMatrix hess;         // D^2 ubar, from 2x2 solves through T
        double det_dt = 0.0;
    };

    SourceJet eval_source(double x, double y) const;

    /// Solves T2(p1, y) = p2 for y by bisection (T2 is monotone on the
    /// admissible strip).  Throws if (p1,p2) is outside the image.
    double invert_y(double p1, double p2) const;
    SourceJet eval_image(double p1, double p2) const;

    /// A conservative box inside the image of the admissible sub-square.
    Box image_box() const;

private:
    PartialRotatedSpec spec_;
    double s_ = 0.0, c_ = 1.0;
    double rho_ = 1.0, ycap_ = 0.999;
    double image_p2_ = 0.0;
};

// ---------------------------------------------------------------------------
// Embeddings into R^n:
//   semiconvex: w = ubar(x1,x2) - tan(theta) sum_{i>2} x_i^2/2,
//               F(D^2 w) = pi/2 - (n-1) theta, and D^2 w >= -tan(theta) I
//               with the ubar block strictly above the bound.
//   convex:     w = ubar(x1,x2) + A sum_{i>2} x_i^2/2,  A >= 0,
//               F(D^2 w) = pi/2 - theta + (n-2) atan(A).
// ---------------------------------------------------------------------------
struct EmbeddedSemiconvexSpec {
    double M = 2.0;
    double theta = 0.5;  // (0, pi/2)
    int n = 3;
};

struct EmbeddedConvexSpec {
    double M = 2.0;
    double theta = 0.0;  // (-pi/2, 0]
    double A = 1.0;      // >= 0
    int n = 3;
};

class EmbeddedSolution {
public:
    static EmbeddedSolution semiconvex(const EmbeddedSemiconvexSpec& spec);
    static EmbeddedSolution convex(const EmbeddedConvexSpec& spec);

    int n() const { return n_; }
    double tail_coefficient() const { return tail_; }
    double phase() const { return phase_; }
    double theta() const { return planar_.spec().theta; }
    const PartialRotated& planar() const { return planar_; }

    struct Jet {
        double w = 0.0;
        Point grad;
        SymmetricMatrix hess;
        double F = 0.0;
        double ubar_min_eig = 0.0;  // min eigenvalue of the planar block
    };

    Jet eval(const Point& p) const;

    /// image box of the planar part times [-1,1]^(n-2)
    Box probe_box() const;

private:
    EmbeddedSolution(PartialRotatedSpec planar, int n, double tail, double phase);

    PartialRotated planar_;
    int n_;
    double tail_;
    double phase_;
};

// ---------------------------------------------------------------------------
// The rank-(n-1) potential of the singular construction:
//   Phi(x) = lambda x1^2/(2(1+x3)) + lambda x2^2/(2(1-x3))
//          + sum_{i>=4} [a_i x_i^2/2 + x_i^4/12],
// with closed-form spectrum (h+g, h-g, 0, a_4+x_4^2, ..., a_n+x_n^2).
// ---------------------------------------------------------------------------
struct SingularPhiSpec {
    double lambda = 1.0;          // > 0
    std::vector<double> a;        // a_4..a_n, all nonzero; n = 3 + a.size()
};

class SingularPhi {
public:
    explicit SingularPhi(SingularPhiSpec spec);

    int n() const { return static_cast<int>(spec_.a.size()) + 3; }
    const SingularPhiSpec& spec() const { return spec_; }

    struct Jet {
        double value = 0.0;
        SymmetricMatrix hess;
        std::vector<double> closed_spectrum;  // sorted descending, includes the exact 0
        double F = 0.0;
    };

    /// Requires |x3| <= 1/2.
    Jet eval(const Point& x) const;
    double phase_at(const Point& x) const;

private:
    SingularPhiSpec spec_;
};

// Hessian of x -> F(D^2 Phi(x)) at 0.  Closed form is diagonal:
//   ( 2l/(1+l^2), 2l/(1+l^2), 4l/(1+l^2) - 4l^3/(1+l^2)^2, 2/(1+a_i^2)... )
// always positive definite, which is the non-degeneracy of the minimum.
struct NonDegenReport {
    SymmetricMatrix closed_hessian;
    SymmetricMatrix fd_hessian;
    double max_entry_gap = 0.0;
    double min_eigenvalue = 0.0;  // of the closed form
    double h = 0.0;
};
NonDegenReport nondegen_check(const SingularPhi& phi, double h = 1e-3);

// Connected component of {F(D^2 Phi) < F(D^2 Phi(0)) + eps^2} through 0,
// flood-filled on a fine grid.  box_halfwidth = 0 sizes the probe box from
// the closed-form minimum curvature.
struct SublevelReport {
    double epsilon = 0.0;
    double diameter = 0.0;
    std::size_t component_nodes = 0;
    double grid_h = 0.0;
};
SublevelReport sublevel_diameter(const SingularPhi& phi, double epsilon,
                                 std::size_t nodes_per_axis = 41, double box_halfwidth = 0.0);

// Parameter choices that pin F(D^2 u) = Theta for the singular family:
//   case 1 (Theta in [pi/2, (n-2)pi/2), n >= 4):  2 atan(lambda) = pi - delta,
//     (n-3) atan(A) + eps^2 = Theta - (n-2)pi/2 + delta, all a_i = A < 0;
//   case 2 (Theta in (-(n-2)pi/2, pi/2), n >= 3):  atan(1/lambda) - eps^2/(n-1)
//     = theta, all a_i = lambda > 0.
struct SharpnessResult {
    int case_id = 0;
    double lambda = 0.0;
    std::optional<double> A;
    std::optional<double> delta;
    double phase_residual = 0.0;  // recomputed phase identity minus Theta
};
SharpnessResult sharpness_parameters(int n, double Theta, double eps,
                                     std::optional<double> delta = std::nullopt);

// ---------------------------------------------------------------------------
// Residual reporting and JSON spec parsing
// ---------------------------------------------------------------------------
struct ResidualReport {
    std::string equation;
    double max_residual = 0.0;
    std::size_t probes = 0;
    double h = 0.0;
};

std::string residual_report_json(const ResidualReport& r);
std::string residual_report_csv_row(const ResidualReport& r);

using ExampleSpec = std::variant<PogorelovSpec, PartialRotatedSpec, EmbeddedSemiconvexSpec,
                                 EmbeddedConvexSpec, SingularPhiSpec>;

/// Accepts {"variant": "PogorelovSL", "M": 2} and friends.  Throws IoError on
/// malformed JSON, InvalidInput on bad parameters.
ExampleSpec parse_example_spec(const std::string& json_text);

/// One report per identity the variant certifies.
std::vector<ResidualReport> verify_example(const ExampleSpec& spec, std::size_t probes,
                                           std::uint64_t seed);

/// Pass threshold for a report line.
double verify_tolerance(const std::string& equation);

}  // namespace slag
