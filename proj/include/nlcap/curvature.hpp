#pragma once

#include "nlcap/interaction.hpp"
#include "nlcap/kernel.hpp"
#include "nlcap/region.hpp"

#include <functional>

namespace nlcap {

// int_{E \ B_delta(x)} K(y - x) dy for a homogeneous planar kernel,
// evaluated in polar coordinates around x with closed-form radial pieces
// and membership-probed tails.
double region_kernel_integral(const Region& E, const Vec2& x, const KernelSpec& K,
                              double delta, double tol = 1e-9);

// Nonlocal K-mean curvature at a boundary point: the principal value of
// int K(x-y) (chi_{E^c}(y) - chi_E(y)) dy, realized by pairing y with its
// point reflection 2x - y inside B_delta(x).
double k_mean_curvature(const KernelSpec& K, const Region& E, const Vec2& x,
                        double delta, double tol = 1e-9);

// Pointwise Euler-Lagrange residual
//   H^{K1}_E(x) - int_{Omega^c} K1(x-y) dy + sigma int_{Omega^c} K2(x-y) dy + g(x).
// Pass a null Omega for the whole plane (no complement terms).
double el_residual(const KernelSpec& K1, const KernelSpec& K2, double sigma,
                   const std::function<double(const Vec2&)>& g, const RegionPtr& Omega,
                   const RegionPtr& E, const Vec2& x, const QuadratureParams& q);

} // namespace nlcap
