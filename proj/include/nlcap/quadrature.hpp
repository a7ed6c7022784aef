#pragma once

#include <functional>
#include <vector>

namespace nlcap {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule of order n (cached).
const GaussRule& gauss_legendre(int n);

// Single-panel Gauss-Legendre on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// Composite GL over an explicit panel partition a = p[0] < ... < p[k] = b.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& panels, int nodes_per_panel);

// Panel partition of [a,b] geometrically refined toward the endpoints flagged
// in (grade_a, grade_b); `levels` halvings per graded end, `mid` uniform
// middle panels. Used for integrands with algebraic endpoint kinks
// (e.g. sin^s): per-panel GL then converges fast without any substitution.
std::vector<double> graded_panels(double a, double b, bool grade_a, bool grade_b,
                                  int levels = 22, int mid = 4);

// Adaptive Simpson with absolute tolerance; throws accuracy_error on
// non-convergence at max depth.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

} // namespace nlcap
