#include "nlcap/curvature.hpp"

#include "nlcap/errors.hpp"
#include "nlcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlcap {

namespace {

constexpr double kTrim = 1e-10; // keep panel ends off critical directions

double wrap_angle(double a, double period) {
    double r = std::fmod(a, period);
    if (r < 0.0) r += period;
    return r;
}

void require_planar_homogeneous(const KernelSpec& K, const char* who) {
    if (K.n != 2) throw std::invalid_argument(std::string(who) + ": planar kernel required");
    if (K.radial_multiplier)
        throw std::invalid_argument(std::string(who) + ": homogeneous kernel required");
}

// Sorted panel breakpoints on [0, period) from raw direction angles.
std::vector<double> panel_breaks(std::vector<double> dirs, double period) {
    for (double& d : dirs) d = wrap_angle(d, period);
    dirs.push_back(0.0);
    std::sort(dirs.begin(), dirs.end());
    std::vector<double> out;
    for (double d : dirs)
        if (out.empty() || d - out.back() > 1e-12) out.push_back(d);
    return out;
}

template <typename F>
double integrate_over_panels(const F& f, const std::vector<double>& breaks,
                             double period, int nodes) {
    double total = 0.0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double a = breaks[i];
        const double b = (i + 1 < breaks.size()) ? breaks[i + 1] : breaks[0] + period;
        if (b - a < 3.0 * kTrim) continue;
        total += integrate_panels(f, graded_panels(a + kTrim, b - kTrim, true, true, 26, 8),
                                  nodes);
    }
    return total;
}

void sorted_hits(const Region& E, const Vec2& x, const Vec2& u, std::vector<double>& h) {
    h.clear();
    E.ray_hits(x, u, h);
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end(),
                        [](double a, double b) { return b - a < 1e-13 * (1.0 + b); }),
            h.end());
}

// chi_{E^c} - chi_E at x + rho*u
int line_sign(const Region& E, const Vec2& x, const Vec2& u, double rho) {
    return E.contains(x + u * rho) ? -1 : 1;
}

double far_probe_radius(const Vec2& x, double last) {
    return 2.0 * last + 2.0 * norm(x) + 10.0;
}

} // namespace

double region_kernel_integral(const Region& E, const Vec2& x, const KernelSpec& K,
                              double delta, double tol) {
    require_planar_homogeneous(K, "region_kernel_integral");
    if (delta < 0.0) throw std::invalid_argument("region_kernel_integral: delta < 0");
    const double s = K.s;

    std::vector<double> dirs;
    E.critical_dirs(x, dirs);
    const auto breaks = panel_breaks(std::move(dirs), 2.0 * M_PI);

    std::vector<double> hits;
    auto radial = [&](double psi) {
        const Vec2 u = unit_at(psi);
        sorted_hits(E, x, u, hits);
        std::vector<double> bp;
        bp.push_back(delta);
        for (double h : hits)
            if (h > delta) bp.push_back(h);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            const double a = bp[i], b = bp[i + 1];
            if (b - a <= 0.0) continue;
            if (E.contains(x + u * (0.5 * (a + b)))) {
                if (a <= 0.0)
                    throw accuracy_error("region_kernel_integral: divergent at base point");
                acc += (std::pow(a, -s) - std::pow(b, -s)) / s;
            }
        }
        const double last = bp.back();
        if (E.contains(x + u * far_probe_radius(x, last))) {
            if (last <= 0.0)
                throw accuracy_error("region_kernel_integral: divergent at base point");
            acc += std::pow(last, -s) / s;
        }
        return acc;
    };

    const auto& ang = K.anisotropy;
    auto f = [&](double psi) { return ang.angular(psi) * radial(psi); };
    (void)tol; // graded panels give fixed, well-below-tolerance resolution
    return integrate_over_panels(f, breaks, 2.0 * M_PI, 16);
}

double k_mean_curvature(const KernelSpec& K, const Region& E, const Vec2& x,
                        double delta, double tol) {
    require_planar_homogeneous(K, "k_mean_curvature");
    if (!(delta > 0.0)) throw std::invalid_argument("k_mean_curvature: delta must be positive");
    const double s = K.s;

    // x must see both phases arbitrarily close by.
    {
        const double probe = 0.5 * std::min(delta, 1e-6);
        bool some_in = false, some_out = false;
        for (int k = 0; k < 32; ++k) {
            const Vec2 p = x + unit_at(k * M_PI / 16.0) * probe;
            (E.contains(p) ? some_in : some_out) = true;
        }
        if (!some_in || !some_out)
            throw std::invalid_argument("k_mean_curvature: x is not a boundary point");
    }

    std::vector<double> dirs;
    E.critical_dirs(x, dirs);
    {
        std::vector<double> both;
        for (double d : dirs) {
            both.push_back(d);
            both.push_back(d + M_PI);
        }
        dirs = std::move(both);
    }
    const auto breaks = panel_breaks(std::move(dirs), M_PI);

    std::vector<double> hu, hm, merged;
    auto line_value = [&](double psi) {
        const Vec2 u = unit_at(psi);
        const Vec2 um = u * -1.0;
        sorted_hits(E, x, u, hu);
        sorted_hits(E, x, um, hm);

        merged.clear();
        for (double h : hu)
            if (h < delta) merged.push_back(h);
        for (double h : hm)
            if (h < delta) merged.push_back(h);
        merged.push_back(delta);
        std::sort(merged.begin(), merged.end());

        double acc = 0.0;
        double prev = 0.0;
        for (double b : merged) {
            if (b - prev > 0.0) {
                const double mid = 0.5 * (prev + b);
                const int g = line_sign(E, x, u, mid) + line_sign(E, x, um, mid);
                if (g != 0) {
                    if (prev <= 0.0)
                        throw accuracy_error(
                            "k_mean_curvature: principal value does not cancel at x");
                    acc += g * (std::pow(prev, -s) - std::pow(b, -s)) / s;
                }
            }
            prev = b;
        }

        for (const auto* side : {&hu, &hm}) {
            const Vec2 dir = (side == &hu) ? u : um;
            std::vector<double> bp;
            bp.push_back(delta);
            for (double h : *side)
                if (h > delta) bp.push_back(h);
            for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
                const double a = bp[i], b = bp[i + 1];
                if (b - a <= 0.0) continue;
                acc += line_sign(E, x, dir, 0.5 * (a + b)) *
                       (std::pow(a, -s) - std::pow(b, -s)) / s;
            }
            acc += line_sign(E, x, dir, far_probe_radius(x, bp.back())) *
                   std::pow(bp.back(), -s) / s;
        }
        return acc;
    };

    const auto& ang = K.anisotropy;
    auto f = [&](double psi) { return ang.angular(psi) * line_value(psi); };
    (void)tol;
    return integrate_over_panels(f, breaks, M_PI, 16);
}

double el_residual(const KernelSpec& K1, const KernelSpec& K2, double sigma,
                   const std::function<double(const Vec2&)>& g, const RegionPtr& Omega,
                   const RegionPtr& E, const Vec2& x, const QuadratureParams& q) {
    if (!E) throw std::invalid_argument("el_residual: null droplet region");
    q.validate();
    double res = k_mean_curvature(K1, *E, x, q.delta, q.tol);
    if (Omega) {
        if (Omega->contains(x) == false)
            throw std::invalid_argument("el_residual: x outside the container");
        const RegionPtr oc = region_complement(Omega);
        res -= region_kernel_integral(*oc, x, K1, 0.0, q.tol);
        if (sigma != 0.0) res += sigma * region_kernel_integral(*oc, x, K2, 0.0, q.tol);
    }
    if (g) res += g(x);
    return res;
}

} // namespace nlcap
