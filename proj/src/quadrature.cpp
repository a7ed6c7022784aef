#include "nlcap/quadrature.hpp"
#include "nlcap/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace nlcap {

// Newton iteration on the Legendre recurrence; standard construction.
static GaussRule make_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += r.weights[i] * f(c + h * r.nodes[i]);
    return h * sum;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& panels, int nodes_per_panel) {
    double sum = 0.0;
    for (size_t k = 0; k + 1 < panels.size(); ++k)
        sum += integrate_gl(f, panels[k], panels[k + 1], nodes_per_panel);
    return sum;
}

std::vector<double> graded_panels(double a, double b, bool grade_a, bool grade_b,
                                  int levels, int mid) {
    if (!(b > a)) throw std::invalid_argument("graded_panels: empty interval");
    const double len = b - a;
    // Graded ends each occupy a quarter of the interval.
    std::vector<double> pts;
    pts.push_back(a);
    if (grade_a) {
        double w = 0.25 * len;
        for (int k = levels - 1; k >= 1; --k) pts.push_back(a + w * std::ldexp(1.0, -k));
        pts.push_back(a + w);
    }
    {
        double lo = grade_a ? a + 0.25 * len : a;
        double hi = grade_b ? b - 0.25 * len : b;
        for (int i = 1; i < mid; ++i) pts.push_back(lo + (hi - lo) * i / mid);
        pts.push_back(hi);
    }
    if (grade_b) {
        double w = 0.25 * len;
        for (int k = 1; k <= levels - 1; ++k) pts.push_back(b - w * std::ldexp(1.0, -k));
        pts.push_back(b);
    }
    return pts;
}

static double simpson(double a, double fa, double b, double fb, double fc) {
    return (b - a) / 6.0 * (fa + 4.0 * fc + fb);
}

static double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double c, double fc, double whole,
                            double tol, int depth) {
    const double m1 = 0.5 * (a + c), m2 = 0.5 * (c + b);
    const double fm1 = f(m1), fm2 = f(m2);
    const double left = simpson(a, fa, c, fc, fm1);
    const double right = simpson(c, fc, b, fb, fm2);
    const double err = left + right - whole;
    // Below the roundoff floor of the two Simpson sums no further refinement
    // is meaningful: the halved tolerance would chase noise to max depth.
    const double floor_tol =
        8.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (std::abs(err) <= std::max(15.0 * tol, floor_tol)) return left + right + err / 15.0;
    if (depth <= 0)
        throw accuracy_error("adaptive quadrature: max depth reached near x = " +
                             std::to_string(c));
    return adaptive_step(f, a, fa, c, fc, m1, fm1, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, c, fc, b, fb, m2, fm2, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    const double whole = simpson(a, fa, b, fb, fc);
    return adaptive_step(f, a, fa, b, fb, c, fc, whole, abs_tol, max_depth);
}

} // namespace nlcap
