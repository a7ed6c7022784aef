#pragma once

#include "nlcap/vec.hpp"

#include <functional>

namespace nlcap {

// Direction-dependent weight w(psi) ~ a(cos psi, sin psi); callers pass
// either an anisotropy or an interpolated phi profile.
using AngularWeight = std::function<double(double)>;

// Open cone about the origin: polar angles in (start, start + width),
// width in (0, 2*pi]. The paper-style wedge J_{t1,t2} is {start=t1,
// width=t2-t1}.
struct Cone {
    double start = 0.0;
    double width = M_PI;
};

// integral over (J \ B_delta(e)) of w(dir(x-e)) |x-e|^{-2-s} dx,
// in polar coordinates centered at e: the radial factor is integrated in
// closed form on the membership intervals (the infinite tail analytically),
// the angular factor adaptively on panels split at the cone's boundary
// directions. Diverges logarithmically-in-delta as delta -> 0 when e lies on
// the cone's closure; callers pick delta below the distance to the non-shared
// boundary rays so that differences of two such integrals are delta-exact
// (even-kernel half-ball cancellation).
double cone_integral(Vec2 e, Cone J, double s, const AngularWeight& w,
                     double delta, double abs_tol);

// integral of w(psi) [R_{J1}(psi) - R_{J2}(psi)] d psi: same as
// cone_integral(J1) - cone_integral(J2) but integrated as one angular
// integral of the difference (better conditioned).
double cone_diff_integral(Vec2 e, Cone J1, Cone J2, double s,
                          const AngularWeight& w, double delta, double abs_tol);

// Distance from the unit point e(theta) to the ray {t*e(gamma) : t >= 0}.
double ray_distance(double theta, double gamma);

} // namespace nlcap
