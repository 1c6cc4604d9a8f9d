#include "slag/phase.hpp"

#include <cmath>

#include "slag/errors.hpp"

namespace slag {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_regime(int n, double Theta) {
    if (n < 2) throw InvalidInput("phase params: need n >= 2");
    if (n == 2) {
        if (!(Theta > 0.0 && Theta < kPi / 2))
            throw InvalidInput("phase params: n = 2 requires Theta in (0, pi/2)");
        return;
    }
    const double lo = -(n - 2) * (kPi / 2);
    if (!(Theta > lo && Theta < kPi / 2))
        throw InvalidInput("phase params: Theta outside (-(n-2)pi/2, pi/2)");
}
}  // namespace

std::string to_string(PhaseClass c) {
    switch (c) {
        case PhaseClass::Subcritical: return "subcritical";
        case PhaseClass::Critical: return "critical";
        default: return "supercritical";
    }
}

PhaseClass classify_phase(int n, double Theta, double tol) {
    if (n < 2) throw InvalidInput("classify_phase: need n >= 2");
    if (!(std::abs(Theta) < n * (kPi / 2))) throw InvalidInput("classify_phase: out-of-range phase");
    const double crit = (n - 2) * (kPi / 2);
    const double gap = std::abs(Theta) - crit;
    if (std::abs(gap) <= tol) return PhaseClass::Critical;
    return gap > 0.0 ? PhaseClass::Supercritical : PhaseClass::Subcritical;
}

PhaseParams derive_phase_params(int n, double Theta) {
    check_regime(n, Theta);
    PhaseParams p;
    p.n = n;
    p.Theta = Theta;
    p.theta = (kPi / 2 - Theta) / (n - 1);
    p.delta = ((n - 2) * (kPi / 2) + Theta) / (2.0 * n * (n - 1));
    p.phi = kPi / 2 - p.theta - p.delta;
    p.sin_phi = std::sin(p.phi);
    p.cos_phi = std::cos(p.phi);
    p.canonical = true;
    return p;
}

PhaseParams phase_params_with_rotation(int n, double Theta, double phi) {
    check_regime(n, Theta);
    PhaseParams p;
    p.n = n;
    p.Theta = Theta;
    p.theta = (kPi / 2 - Theta) / (n - 1);
    if (!(phi >= 0.0 && phi < kPi / 2 - p.theta))
        throw InvalidInput("phase params: phi outside [0, pi/2 - theta)");
    p.delta = kPi / 2 - p.theta - phi;
    p.phi = phi;
    p.sin_phi = std::sin(phi);
    p.cos_phi = std::cos(phi);
    p.canonical = false;
    return p;
}

}  // namespace slag
