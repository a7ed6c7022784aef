#pragma once

#include "nlcap/vec.hpp"

#include <memory>
#include <vector>

namespace nlcap {

struct GridMask;

// A planar region exposing exactly what polar-ray quadrature needs:
// membership, boundary crossings along rays, and the directions from a
// given point at which the crossing structure can change.
class Region {
public:
    virtual ~Region() = default;

    virtual bool contains(const Vec2& p) const = 0;

    // Appends every rho > 0 at which p + rho*u meets the boundary. May
    // report spurious interior points; callers classify intervals by
    // midpoint membership, so extra breakpoints are harmless.
    virtual void ray_hits(const Vec2& p, const Vec2& u,
                          std::vector<double>& out) const = 0;

    // Appends direction angles (not normalized to [0,2pi)) from x along
    // which ray_hits is non-smooth; angular panels are split there.
    virtual void critical_dirs(const Vec2& x, std::vector<double>& out) const = 0;

    // Axis-aligned bounding box; false if the region is unbounded.
    virtual bool bounds(Vec2& lo, Vec2& hi) const = 0;
};

using RegionPtr = std::shared_ptr<const Region>;

// {x : dot(normal, x) <= offset}
RegionPtr region_halfspace(const Vec2& normal, double offset);
// Open cone of polar angles (theta1, theta2) with apex at the origin,
// 0 <= theta1 < theta2 <= 2*pi.
RegionPtr region_wedge(double theta1, double theta2);
RegionPtr region_ball(const Vec2& center, double radius);
RegionPtr region_box(const Vec2& lo, const Vec2& hi);
RegionPtr region_complement(RegionPtr r);
RegionPtr region_intersect(RegionPtr a, RegionPtr b);
RegionPtr region_grid_mask(std::shared_ptr<const GridMask> mask);

} // namespace nlcap
