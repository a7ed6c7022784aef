#include "nlcap/kernel.hpp"
#include "nlcap/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace nlcap {

KernelSpec KernelSpec::make_homogeneous(int n, double s, AnisotropyFn a,
                                        double lambda, double rho) {
    if (a.dimension() != n) throw std::invalid_argument("kernel: anisotropy dimension mismatch");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("kernel: s must lie in (0,1)");
    KernelSpec k;
    k.n = n;
    k.s = s;
    k.anisotropy = std::move(a);
    // Tightest ellipticity consistent with the sampled anisotropy bounds.
    if (lambda > 0.0)
        k.lambda = lambda;
    else
        k.lambda = std::max({1.0, k.anisotropy.a_max(),
                             k.anisotropy.a_min() > 0.0 ? 1.0 / k.anisotropy.a_min() : 1.0});
    k.rho = rho;
    return k;
}

KernelSpec KernelSpec::make_profiled(int n, double s, AnisotropyFn a,
                                     std::function<double(double)> multiplier,
                                     double lambda, double rho) {
    if (!multiplier) throw std::invalid_argument("kernel: null radial multiplier");
    KernelSpec k = make_homogeneous(n, s, std::move(a), lambda, rho);
    k.radial_multiplier = std::move(multiplier);
    return k;
}

double eval_kernel(const KernelSpec& spec, const VecN& zeta) {
    if ((int)zeta.size() != spec.n)
        throw std::invalid_argument("eval_kernel: point has wrong dimension");
    double r2 = 0.0;
    for (double c : zeta) r2 += c * c;
    if (r2 == 0.0) throw std::domain_error("eval_kernel: kernel singular at 0");
    const double r = std::sqrt(r2);
    VecN w(zeta);
    for (auto& c : w) c /= r;
    double v = spec.anisotropy(w) * std::pow(r, -(spec.n + spec.s));
    if (spec.radial_multiplier) v *= spec.radial_multiplier(r);
    return v;
}

double eval_kernel(const KernelSpec& spec, Vec2 zeta) {
    if (spec.n != 2) throw std::invalid_argument("eval_kernel(Vec2): n=2 kernels only");
    const double r = norm(zeta);
    if (r == 0.0) throw std::domain_error("eval_kernel: kernel singular at 0");
    double v = spec.anisotropy.angular(std::atan2(zeta.y, zeta.x)) *
               std::pow(r, -(2.0 + spec.s));
    if (spec.radial_multiplier) v *= spec.radial_multiplier(r);
    return v;
}

KernelClassReport validate_kernel_class(const KernelSpec& spec,
                                        const std::vector<VecN>& samples) {
    if (samples.empty()) throw std::invalid_argument("validate_kernel_class: no samples");
    const double even_tol = spec.anisotropy.tabulated() ? 1e-9 : 1e-12;
    KernelClassReport report;
    for (const auto& z : samples) {
        double r2 = 0.0;
        for (double c : z) r2 += c * c;
        if (r2 == 0.0) throw std::invalid_argument("validate_kernel_class: zero sample");
        const double r = std::sqrt(r2);
        const double v = eval_kernel(spec, z);
        const double ref = std::pow(r, -(spec.n + spec.s));
        const double upper = spec.lambda * ref;
        if (v > upper * (1.0 + 1e-12))
            report.violations.push_back({z, "upper", v, upper});
        if (r < spec.rho) {
            const double lower = ref / spec.lambda;
            if (v < lower * (1.0 - 1e-12))
                report.violations.push_back({z, "lower", v, lower});
        }
        VecN neg(z);
        for (auto& c : neg) c = -c;
        const double vneg = eval_kernel(spec, neg);
        if (std::abs(v - vneg) > even_tol * std::max(std::abs(v), std::abs(vneg)))
            report.violations.push_back({z, "evenness", v, vneg});
    }
    return report;
}

KernelSpec blowup_kernel(const KernelSpec& spec) {
    if (spec.homogeneous()) return spec;
    // Probe m(r) on dyadic radii; demand a Cauchy tail.
    double last = 0.0;
    std::vector<double> tail;
    for (int k = 8; k <= 44; ++k) {
        last = spec.radial_multiplier(std::ldexp(1.0, -k));
        if (k >= 38) tail.push_back(last);
    }
    double lo = tail[0], hi = tail[0];
    for (double v : tail) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi - lo <= 1e-6 * std::max(1.0, std::abs(hi))) || !std::isfinite(last))
        throw no_blowup("blowup_kernel: radial multiplier has no limit at 0");
    const double limit = 0.5 * (lo + hi);
    KernelSpec out = spec;
    out.radial_multiplier = nullptr;
    out.rho = INFINITY;
    if (std::abs(limit - 1.0) > 1e-9) {
        AnisotropyFn base = spec.anisotropy;
        out.anisotropy = (spec.n == 2)
            ? AnisotropyFn::from_angular([base, limit](double psi) {
                  return limit * base.angular(psi);
              })
            : AnisotropyFn::from_function(spec.n, [base, limit](const VecN& w) {
                  return limit * base(w);
              });
    }
    out.lambda = std::max({1.0, out.anisotropy.a_max(),
                           out.anisotropy.a_min() > 0.0 ? 1.0 / out.anisotropy.a_min() : 1.0});
    return out;
}

} // namespace nlcap
