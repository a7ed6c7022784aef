#pragma once

#include "nlcap/grid.hpp"
#include "nlcap/kernel.hpp"
#include "nlcap/region.hpp"

#include <vector>

namespace nlcap {

struct QuadratureParams {
    double h = 0.25;     // window cell size for analytic-region quadrature
    double delta = 0.25; // principal-value cutoff radius
    double R = 50.0;     // outer truncation radius
    int nodes = 16;      // Gauss-Legendre order for 1D sub-integrals
    double tol = 1e-7;
    void validate() const;
};

struct InteractionResult {
    double value = 0.0;
    double tail_bound = 0.0; // bound on the truncated remainder (0 if none)
};

// Pairwise cell-interaction energies indexed by integer displacement.
// Covers |di| <= nx-1, |dj| <= ny-1; the zero offset is 0 by convention
// (distinct-cell sums never use it, and the same-cell pair diverges).
struct OffsetTable {
    int nx = 0, ny = 0;
    std::vector<double> v;
    double at(int di, int dj) const {
        return v[static_cast<std::size_t>(dj + ny - 1) * (2 * nx - 1) + (di + nx - 1)];
    }
};

OffsetTable build_offset_table(const KernelSpec& K, int nx, int ny, double h);

// I_K(A,B) = int_A int_B K(x-y). Grid pairs: offset-table midpoint rule with
// 4x4 subdivision of near pairs. Analytic regions: midpoint windows clipped
// to [-R,R]^2 plus a tail bound from the kernel's upper sandwich bound.
InteractionResult interaction_integral(const KernelSpec& K, const GridMask& A,
                                       const GridMask& B, const QuadratureParams& q);
InteractionResult interaction_integral(const KernelSpec& K, const RegionPtr& A,
                                       const RegionPtr& B, const QuadratureParams& q);

// Constant in the slab/half-space closed form  c_star * r^(n-1) * t^(1-s).
double c_star(int n, double s);

struct SlabResult {
    double numeric = 0.0;
    double reference = 0.0; // closed form (halfspace) or fitted bound (annulus)
};

// Interaction of the slab D = {|x'| < r, x_n in (0,t)} with {y_n < 0}.
SlabResult slab_halfspace_interaction(int n, double s, double r, double t,
                                      const QuadratureParams& q);
// Interaction of D with the coaxial exterior shell {|x'| > r, x_n in (0,t)};
// reference = C_fit * t * r^(n-1-s) with C_fit calibrated at r = t = 1.
SlabResult slab_annulus_bound(int n, double s, double r, double t,
                              const QuadratureParams& q);

} // namespace nlcap
