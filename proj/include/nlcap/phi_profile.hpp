#pragma once

#include "nlcap/anisotropy.hpp"

#include <string>
#include <vector>

namespace nlcap {

// Reduced angular weight phi(alpha) = a*(cos alpha, sin alpha) on a uniform
// grid of [0, 2*pi), linear interpolation, with the half-period identity
// phi(alpha) = phi(alpha + pi) enforced by averaging.
class PhiProfile {
public:
    // Tabulate directly from samples over [0, 2*pi) (values[i] at 2*pi*i/N).
    // Positivity is enforced unless allow_zero (degenerate-kernel studies).
    static PhiProfile from_samples(std::vector<double> values, double s,
                                   bool allow_zero = false);
    static PhiProfile constant(double value, double s, int grid_size = 1024);
    static PhiProfile load_table(const std::string& path, double s);
    void save_table(const std::string& path) const;

    double eval(double alpha) const;
    double s() const { return s_; }
    int grid_size() const { return (int)values_.size(); }
    const std::vector<double>& values() const { return values_; }

private:
    PhiProfile() = default;
    std::vector<double> values_;
    double s_ = 0.5;
};

// a*(x) for unit x in R^2: identity for n=2; for n=3 the 1D projection
// integral over the suppressed coordinate (adaptive quadrature after a tan
// substitution); for n>=4 importance-sampled Monte Carlo (deterministic
// seed). `stderr_out`, when non-null, receives the MC standard error
// (0 for deterministic paths).
double project_anisotropy(const AnisotropyFn& a, int n, double s, Vec2 x,
                          double* stderr_out = nullptr);

// Tabulates phi(alpha) = a*(cos alpha, sin alpha) on grid_size angles.
PhiProfile build_phi(const AnisotropyFn& a, int n, double s, int grid_size = 1024);

} // namespace nlcap
