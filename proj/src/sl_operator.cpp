#include "slag/sl_operator.hpp"

#include <cmath>
#include <string>

#include "slag/errors.hpp"

namespace slag {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double eig_angle(double lambda) {
    if (std::abs(lambda) > 1e15) return std::copysign(kPi / 2, lambda);
    return std::atan(lambda);
}

double arccot(double lambda) { return kPi / 2 - eig_angle(lambda); }

double sl_operator(const Spectrum& spec) {
    double f = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) f += eig_angle(spec[i]);
    return f;
}

double sl_operator(const SymmetricMatrix& m) { return sl_operator(spectrum_of(m)); }

double alt_form_residual(const Spectrum& spec, const PhaseParams& params) {
    double rhs = 0.0;
    for (std::size_t i = 1; i < spec.size(); ++i) rhs += eig_angle(spec[i]) + params.theta;
    return (kPi / 2 - eig_angle(spec.top())) - rhs;
}

double trace_identity_residual(const Spectrum& spec, const PhaseParams& params) {
    double lhs = 0.0;
    for (std::size_t i = 1; i < spec.size(); ++i)
        lhs += eig_angle(spec[i]) + params.theta + params.phi;
    return lhs - (arccot(spec.top()) - params.phi);
}

SemiconvexEigReport semiconvex_eig_bounds(const Spectrum& spec, const PhaseParams& params,
                                          double tol) {
    if (spec.size() != static_cast<std::size_t>(params.n))
        throw InvalidInput("semiconvex_eig_bounds: dimension mismatch");
    const double f = sl_operator(spec);
    if (std::abs(f - params.Theta) > tol)
        throw InapplicableInput("semiconvex_eig_bounds: spectrum does not solve the equation, |F - Theta| = " +
                                std::to_string(std::abs(f - params.Theta)));
    const double tan_theta = std::tan(params.theta);
    if (spec.bottom() < -tan_theta - tol)
        throw InapplicableInput("semiconvex_eig_bounds: semi-convexity bound violated");

    SemiconvexEigReport r;
    r.upper_margin = 1.0 - spec[1];
    r.lower_margin = spec.bottom() + tan_theta;
    return r;
}

RigidityReport rigidity_check(const Spectrum& spec, const PhaseParams& params, double tol) {
    if (spec.size() != static_cast<std::size_t>(params.n))
        throw InvalidInput("rigidity_check: dimension mismatch");
    const double top_angle = eig_angle(spec.top());
    if (std::abs(top_angle - (kPi / 2 - params.phi)) > tol)
        throw InapplicableInput("rigidity_check: top eigen-angle is not maximal");
    if (std::abs(sl_operator(spec) - params.rotated_phase()) > tol)
        throw InapplicableInput("rigidity_check: spectrum does not solve the rotated equation");
    const double floor = -std::tan(params.theta + params.phi);
    if (spec.bottom() < floor - tol)
        throw InapplicableInput("rigidity_check: rotated semi-convexity bound violated");

    RigidityReport r;
    r.derived_tol = (params.n + 1) * tol;
    for (std::size_t i = 1; i < spec.size(); ++i) {
        const double dev = std::abs(eig_angle(spec[i]) + params.theta + params.phi);
        r.max_angle_deviation = std::max(r.max_angle_deviation, dev);
    }
    return r;
}

}  // namespace slag
