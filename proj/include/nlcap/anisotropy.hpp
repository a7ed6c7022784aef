#pragma once

#include "nlcap/vec.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nlcap {

// Even, positive, continuous direction weight a(omega) on S^{n-1}.
// Evenness/positivity are *checked* by validate_kernel_class rather than
// forced here, so deliberately broken inputs remain constructible (and
// reportable). Table-loaded profiles (n=2) are symmetrized on load.
class AnisotropyFn {
public:
    static AnisotropyFn constant(int n, double value = 1.0);
    static AnisotropyFn from_function(int n, std::function<double(const VecN&)> f);
    // n=2 convenience: f(psi) = a(cos psi, sin psi).
    static AnisotropyFn from_angular(std::function<double(double)> f);
    // n=2 table "angle value"; linear interpolation, 2*pi-periodic,
    // symmetrized to enforce a(psi) = a(psi + pi).
    static AnisotropyFn from_table(std::vector<double> angles, std::vector<double> values);
    static AnisotropyFn load_table(const std::string& path);
    void save_table(const std::string& path, int samples = 720) const;

    int dimension() const { return n_; }
    bool tabulated() const { return tabulated_; }
    double a_min() const { return a_min_; }
    double a_max() const { return a_max_; }

    double operator()(const VecN& omega) const; // |omega| = 1
    double angular(double psi) const;           // n=2 only

private:
    AnisotropyFn() = default;
    void probe_bounds();

    int n_ = 2;
    bool tabulated_ = false;
    double a_min_ = 1.0, a_max_ = 1.0;
    std::function<double(const VecN&)> eval_;
    std::function<double(double)> eval_angular_; // set when n == 2
};

} // namespace nlcap
