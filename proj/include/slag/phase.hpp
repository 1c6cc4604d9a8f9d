#pragma once

#include <string>

namespace slag {

enum class PhaseClass { Subcritical, Critical, Supercritical };

std::string to_string(PhaseClass c);

/// Supercritical iff |Theta| > (n-2)*pi/2, critical iff equal (within tol),
/// subcritical otherwise.  Requires |Theta| < n*pi/2.
PhaseClass classify_phase(int n, double Theta, double tol = 0.0);

// Phase bookkeeping for the semi-convex regime.  The canonical construction
// picks
//   theta = (pi/2 - Theta)/(n-1)
//   delta = ((n-2)*pi/2 + Theta)/(2n(n-1))      ( = (pi/2 - theta)/(2n) )
//   phi   = pi/2 - theta - delta
// and then Theta - n*phi = -(n-2)*pi/2 - n*delta, a negative supercritical
// phase.  A custom rotation angle phi in [0, pi/2 - theta) may be installed
// instead; the newTheta identity above holds only for the canonical delta.
struct PhaseParams {
    int n = 0;
    double Theta = 0.0;
    double theta = 0.0;
    double delta = 0.0;
    double phi = 0.0;
    double sin_phi = 0.0;
    double cos_phi = 1.0;
    bool canonical = true;

    double rotated_phase() const { return Theta - n * phi; }
};

/// Canonical parameters.  Regime: n >= 3 with Theta in (-(n-2)pi/2, pi/2),
/// or n == 2 with Theta in (0, pi/2).  Throws InvalidInput otherwise.
PhaseParams derive_phase_params(int n, double Theta);

/// Same regime checks, but with a caller-chosen rotation angle.
PhaseParams phase_params_with_rotation(int n, double Theta, double phi);

}  // namespace slag
