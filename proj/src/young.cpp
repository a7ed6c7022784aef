#include "nlcap/young.hpp"
#include "nlcap/errors.hpp"
#include "nlcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlcap {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Sticking: return "Sticking";
        case Regime::Detachment: return "Detachment";
        case Regime::Interior: return "Interior";
        case Regime::Indeterminate: return "Indeterminate";
    }
    return "?";
}

double phi_sin_integral(const PhiProfile& phi, double s, double a, double b) {
    if (a < -1e-12 || b > M_PI + 1e-12 || a > b)
        throw std::domain_error("phi_sin_integral: need 0 <= a <= b <= pi");
    if (b - a < 1e-300) return 0.0;
    auto f = [&](double alpha) { return phi.eval(alpha) * std::pow(std::sin(alpha), s); };
    // Grade toward the sin^s kinks at 0 and pi only.
    const bool ga = a < 1e-12, gb = b > M_PI - 1e-12;
    return integrate_panels(f, graded_panels(a, b, ga, gb), 16);
}

static void check_validity(const YoungProblem& p) {
    if (!(p.s1 > 0.0 && p.s1 < 1.0) || !(p.s2 > 0.0 && p.s2 < 1.0))
        throw std::invalid_argument("young: exponents must lie in (0,1)");
    if (!p.interior_equation_valid())
        throw unsupported_regime("young: interior equation needs s1 == s2 or sigma == 0");
    if (p.sigma != 0.0 && !p.phi2)
        throw std::invalid_argument("young: phi2 required when sigma != 0");
}

double young_deficit(const YoungProblem& p, double theta) {
    check_validity(p);
    if (theta < 0.0 || theta > M_PI)
        throw std::domain_error("young_deficit: theta outside [0, pi]");
    const double A = phi_sin_integral(p.phi1, p.s1, 0.0, theta);
    const double B = phi_sin_integral(p.phi1, p.s1, theta, M_PI);
    double W = A - B;
    if (p.sigma != 0.0)
        W -= p.sigma * phi_sin_integral(*p.phi2, p.s1, 0.0, M_PI);
    return W;
}

double sigma_bound(const PhiProfile& phi1, const PhiProfile& phi2, double s1) {
    const double num = phi_sin_integral(phi1, s1, 0.0, M_PI);
    const double den = phi_sin_integral(phi2, s1, 0.0, M_PI);
    return num / den;
}

Regime classify_regime(double s1, double s2, double sigma, std::optional<double> bound) {
    if (s1 < s2) {
        if (sigma < 0.0) return Regime::Sticking;
        if (sigma > 0.0) return Regime::Detachment;
        return Regime::Interior;
    }
    if (s1 > s2) return Regime::Interior;
    if (sigma == 0.0) return Regime::Interior;
    if (!bound) throw std::invalid_argument("classify_regime: bound required when s1 == s2");
    return std::abs(sigma) < *bound ? Regime::Interior : Regime::Indeterminate;
}

AngleSolution solve_contact_angle(const YoungProblem& p) {
    check_validity(p);
    AngleSolution sol;
    sol.sigma_bound = p.phi2 ? sigma_bound(p.phi1, *p.phi2, p.s1) : INFINITY;
    sol.unique = std::abs(p.sigma) < sol.sigma_bound;

    sol.regime = classify_regime(p.s1, p.s2, p.sigma,
                                 p.phi2 ? std::optional<double>(sol.sigma_bound)
                                        : std::nullopt);
    if (sol.regime == Regime::Sticking) {
        sol.theta = 0.0;
        return sol;
    }
    if (sol.regime == Regime::Detachment) {
        sol.theta = M_PI;
        return sol;
    }

    const double eps = 1e-9;
    auto W = [&](double t) { return young_deficit(p, t); };
    double lo = eps, hi = M_PI - eps;
    double wlo = W(lo), whi = W(hi);
    if (wlo == 0.0 && whi == 0.0)
        throw no_interior_solution("solve_contact_angle: W vanishes at both endpoints");
    if (wlo * whi > 0.0)
        throw no_interior_solution("solve_contact_angle: W has the same sign at both endpoints");

    const double w_tol = 1e-10;
    double mid = 0.5 * (lo + hi), wmid = W(mid);
    while (hi - lo > 1e-12 && std::abs(wmid) > w_tol) {
        if ((wmid > 0.0) == (whi > 0.0)) {
            hi = mid;
            whi = wmid;
        } else {
            lo = mid;
            wlo = wmid;
        }
        mid = 0.5 * (lo + hi);
        wmid = W(mid);
    }
    sol.theta = mid;
    sol.residual = std::abs(wmid);
    sol.bracket = hi - lo;

    // Zero-plateau sweep (degenerate kernels): coarse outward scan, then a
    // bisection refinement of each plateau edge.
    const double step = 1e-3;
    double plo = mid, phi_edge = mid;
    while (plo - step > eps && std::abs(W(plo - step)) < w_tol) plo -= step;
    while (phi_edge + step < M_PI - eps && std::abs(W(phi_edge + step)) < w_tol)
        phi_edge += step;
    if (phi_edge - plo > 1e-6) {
        auto refine = [&](double inside, double outside) {
            for (int i = 0; i < 40; ++i) {
                double m = 0.5 * (inside + outside);
                (std::abs(W(m)) < w_tol ? inside : outside) = m;
            }
            return inside;
        };
        sol.plateau = true;
        sol.plateau_lo = refine(plo, std::max(eps, plo - step));
        sol.plateau_hi = refine(phi_edge, std::min(M_PI - eps, phi_edge + step));
    }
    return sol;
}

namespace {

double cancellation_D_impl(const AngularWeight& w, double s1, double theta,
                           double theta_bar) {
    if (!(theta > 0.0 && theta < M_PI))
        throw std::domain_error("cancellation_D: theta outside (0, pi)");
    if (!(theta_bar > 0.0 && theta_bar < 2.0 * M_PI))
        throw std::domain_error("cancellation_D: theta_bar outside (0, 2*pi)");
    if (!(s1 > 0.0 && s1 < 1.0)) throw std::invalid_argument("cancellation_D: s in (0,1)");
    // PV radius: below the distance from e(theta) to both non-shared
    // boundary rays the B_delta contributions cancel exactly by evenness.
    const double delta_max =
        std::min(ray_distance(theta, 0.0), ray_distance(theta, theta + theta_bar));
    const double delta = 0.5 * delta_max;
    const Vec2 e = unit_at(theta);
    return cone_diff_integral(e, Cone{theta, theta_bar}, Cone{0.0, theta}, s1, w,
                              delta, 1e-10);
}

DualAngleResult dual_angle_impl(const AngularWeight& w, double s1, double theta,
                                double c) {
    auto D = [&](double tb) { return cancellation_D_impl(w, s1, theta, tb); };
    const double lo_lim = 1e-6, hi_lim = 2.0 * M_PI - 1e-6;
    // Geometric endpoint expansion: D decreases to -inf at 0+ and grows to
    // +inf at 2*pi-.
    double lo = std::clamp(theta, lo_lim, hi_lim);
    double dlo = D(lo);
    while (dlo > c) {
        if (lo <= lo_lim + 1e-15)
            throw std::range_error("dual_angle: no bracket above 1e-6");
        lo = std::max(lo_lim, 0.5 * lo);
        dlo = D(lo);
    }
    double hi = std::clamp(std::max(theta, M_PI), lo_lim, hi_lim);
    double dhi = D(hi);
    while (dhi < c) {
        if (hi >= hi_lim - 1e-15)
            throw std::range_error("dual_angle: no bracket below 2*pi - 1e-6");
        hi = std::min(hi_lim, 0.5 * (hi + 2.0 * M_PI));
        dhi = D(hi);
    }
    if (lo > hi) std::swap(lo, hi);

    DualAngleResult res;
    res.c = c;
    double mid = 0.5 * (lo + hi), dmid = D(mid);
    while (hi - lo > 1e-11 && std::abs(dmid - c) > 1e-9) {
        if (dmid > c)
            hi = mid;
        else
            lo = mid;
        mid = 0.5 * (lo + hi);
        dmid = D(mid);
    }
    res.theta_hat = mid;
    res.residual = std::abs(dmid - c);
    if (res.residual > 1e-8)
        throw accuracy_error("dual_angle: residual above 1e-8 after bisection");
    return res;
}

AngularWeight weight_of(const AnisotropyFn& a) {
    if (a.dimension() != 2)
        throw std::invalid_argument("cancellation_D/dual_angle: n=2 anisotropy required");
    return [a](double psi) { return a.angular(psi); };
}

AngularWeight weight_of(const PhiProfile& phi) {
    return [phi](double psi) { return phi.eval(psi); };
}

} // namespace

double cancellation_D(const AnisotropyFn& a1, double s1, double theta, double theta_bar) {
    return cancellation_D_impl(weight_of(a1), s1, theta, theta_bar);
}
double cancellation_D(const PhiProfile& phi1, double s1, double theta, double theta_bar) {
    return cancellation_D_impl(weight_of(phi1), s1, theta, theta_bar);
}

DualAngleResult dual_angle(const AnisotropyFn& a1, double s1, double theta, double c) {
    return dual_angle_impl(weight_of(a1), s1, theta, c);
}
DualAngleResult dual_angle(const PhiProfile& phi1, double s1, double theta, double c) {
    return dual_angle_impl(weight_of(phi1), s1, theta, c);
}

WedgeResidual wedge_young_residual(const YoungProblem& p, double theta) {
    check_validity(p);
    if (!(theta > 0.0 && theta < M_PI))
        throw std::domain_error("wedge_young_residual: theta outside (0, pi)");
    WedgeResidual r;
    const double sinpow = std::pow(std::sin(theta), p.s1);
    r.reduced = young_deficit(p, theta) / (p.s1 * sinpow);

    const Vec2 e = unit_at(theta);
    const double delta = 0.5 * std::sin(theta);
    const AngularWeight w1 = weight_of(p.phi1);
    r.direct = cone_diff_integral(e, Cone{0.0, theta}, Cone{theta, M_PI - theta},
                                  p.s1, w1, delta, 1e-8);
    if (p.sigma != 0.0) {
        const AngularWeight w2 = weight_of(*p.phi2);
        // H^c is the lower half-plane: the cone of angles (pi, 2*pi).
        r.direct -= p.sigma *
                    cone_integral(e, Cone{M_PI, M_PI}, p.s1, w2, delta, 1e-8);
    }
    return r;
}

} // namespace nlcap
