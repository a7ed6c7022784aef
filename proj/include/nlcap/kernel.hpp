#pragma once

#include "nlcap/anisotropy.hpp"
#include "nlcap/vec.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nlcap {

// Interaction kernel K(zeta) = a(zeta/|zeta|) m(|zeta|) / |zeta|^{n+s},
// claimed to lie in the class with ellipticity lambda and locality radius
// rho (rho = infinity allowed):
//   chi_{B_rho}(zeta) / (lambda |zeta|^{n+s}) <= K(zeta) <= lambda / |zeta|^{n+s}.
// Homogeneous form has no radial multiplier (m == 1).
struct KernelSpec {
    int n = 2;
    double s = 0.5;
    double lambda = 1.0;
    double rho = INFINITY;
    AnisotropyFn anisotropy = AnisotropyFn::constant(2);
    std::function<double(double)> radial_multiplier; // empty <=> homogeneous
    // Metadata only: membership in the smoother subclasses (derivative
    // bounds); never verified numerically.
    int smoothness_order = 0;

    bool homogeneous() const { return !radial_multiplier; }

    static KernelSpec make_homogeneous(int n, double s, AnisotropyFn a,
                                       double lambda = 0.0, double rho = INFINITY);
    static KernelSpec make_profiled(int n, double s, AnisotropyFn a,
                                    std::function<double(double)> multiplier,
                                    double lambda, double rho = INFINITY);
};

double eval_kernel(const KernelSpec& spec, const VecN& zeta);
double eval_kernel(const KernelSpec& spec, Vec2 zeta); // n=2 fast path

struct KernelClassReport {
    struct Violation {
        VecN point;
        std::string kind; // "upper" | "lower" | "evenness"
        double value = 0.0;
        double bound = 0.0;
    };
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

// Checks the sandwich bounds and evenness at the given sample points.
// Violations are data, not errors.
KernelClassReport validate_kernel_class(const KernelSpec& spec,
                                        const std::vector<VecN>& samples);

// K*(zeta) = lim_{r->0+} r^{n+s} K(r zeta): exactly homogeneous blow-up.
// Homogeneous input is returned unchanged (idempotent). Throws no_blowup if
// the radial multiplier has no limit at 0.
KernelSpec blowup_kernel(const KernelSpec& spec);

} // namespace nlcap
