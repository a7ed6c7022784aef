#pragma once

#include "nlcap/anisotropy.hpp"
#include "nlcap/phi_profile.hpp"
#include "nlcap/wedge_rays.hpp"

#include <optional>
#include <string>

namespace nlcap {

struct YoungProblem {
    double s1 = 0.5;
    double s2 = 0.5;
    double sigma = 0.0;
    PhiProfile phi1 = PhiProfile::constant(1.0, 0.5);
    std::optional<PhiProfile> phi2; // may be absent when sigma == 0

    // Interior-angle equation is meaningful only when s1 == s2 or sigma == 0.
    bool interior_equation_valid() const { return s1 == s2 || sigma == 0.0; }
};

enum class Regime { Sticking, Detachment, Interior, Indeterminate };
std::string to_string(Regime r);

struct AngleSolution {
    Regime regime = Regime::Interior;
    double theta = 0.0;       // radians in [0, pi]
    double residual = 0.0;    // |W(theta)| at the solution (0 for endpoint regimes)
    bool unique = true;       // |sigma| < sigma_bound
    double sigma_bound = 0.0;
    double bracket = 0.0;     // final bisection interval width
    bool plateau = false;     // nonuniqueness flag: |W| < 1e-10 on a wide interval
    double plateau_lo = 0.0;
    double plateau_hi = 0.0;
};

struct DualAngleResult {
    double theta_hat = 0.0; // in (0, 2*pi)
    double c = 0.0;
    double residual = 0.0;  // |D_theta(theta_hat) - c|
};

// W(theta) = int_0^theta phi1 sin^{s1} - int_theta^pi phi1 sin^{s1}
//            - sigma int_0^pi phi2 sin^{s1}.
// Strictly increasing, W' = 2 phi1(theta) sin^{s1}(theta).
double young_deficit(const YoungProblem& p, double theta);

// int_0^pi phi1 sin^{s1} / int_0^pi phi2 sin^{s1}: |sigma| below this ratio
// certifies a unique interior angle (s1 == s2).
double sigma_bound(const PhiProfile& phi1, const PhiProfile& phi2, double s1);

Regime classify_regime(double s1, double s2, double sigma,
                       std::optional<double> bound = std::nullopt);

AngleSolution solve_contact_angle(const YoungProblem& p);

// D_theta(theta_bar): difference of the two wedge integrals around e(theta),
// principal value realized by the exact B_delta cancellation.
double cancellation_D(const AnisotropyFn& a1, double s1, double theta, double theta_bar);
double cancellation_D(const PhiProfile& phi1, double s1, double theta, double theta_bar);

// Unique theta_hat in (0, 2*pi) with D_theta(theta_hat) = c.
DualAngleResult dual_angle(const AnisotropyFn& a1, double s1, double theta, double c);
DualAngleResult dual_angle(const PhiProfile& phi1, double s1, double theta, double c);

// The angle relation evaluated two independent ways:
//   reduced = W(theta) / (s1 sin^{s1} theta)   (1D quadrature),
//   direct  = I_delta(J_{0,theta}) - I_delta(J_{theta,pi}) - sigma int_{H^c}
// (2D polar quadrature; equals the relation's left-hand side times -1, the
// convention under which both routes vanish at the Young angle).
struct WedgeResidual {
    double reduced = 0.0;
    double direct = 0.0;
};
WedgeResidual wedge_young_residual(const YoungProblem& p, double theta);

// Weighted integral int_a^b phi(alpha) sin(alpha)^s dalpha on [0, pi]
// (graded composite Gauss-Legendre; exposed for reuse and testing).
double phi_sin_integral(const PhiProfile& phi, double s, double a, double b);

} // namespace nlcap
