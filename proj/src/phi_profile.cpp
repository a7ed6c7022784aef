#include "nlcap/phi_profile.hpp"
#include "nlcap/errors.hpp"
#include "nlcap/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nlcap {

PhiProfile PhiProfile::from_samples(std::vector<double> values, double s, bool allow_zero) {
    if (values.size() < 16 || values.size() % 2 != 0)
        throw std::invalid_argument("phi profile: grid size must be even and >= 16");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("phi profile: s in (0,1)");
    const size_t half = values.size() / 2;
    for (size_t i = 0; i < half; ++i) {
        double avg = 0.5 * (values[i] + values[i + half]);
        values[i] = values[i + half] = avg;
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0))
            throw std::invalid_argument("phi profile: values must be positive");
    }
    PhiProfile p;
    p.values_ = std::move(values);
    p.s_ = s;
    return p;
}

PhiProfile PhiProfile::constant(double value, double s, int grid_size) {
    return from_samples(std::vector<double>(grid_size, value), s);
}

PhiProfile PhiProfile::load_table(const std::string& path, double s) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("phi table: cannot open " + path);
    std::vector<double> angles, values;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double t, v;
        if (ls >> t >> v) {
            angles.push_back(t);
            values.push_back(v);
        }
    }
    // Resample through the anisotropy interpolator to get a uniform grid.
    AnisotropyFn a = AnisotropyFn::from_table(std::move(angles), values);
    std::vector<double> grid(1024);
    for (size_t i = 0; i < grid.size(); ++i)
        grid[i] = a.angular(2.0 * M_PI * i / grid.size());
    return from_samples(std::move(grid), s);
}

void PhiProfile::save_table(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("phi table: cannot write " + path);
    out.precision(17);
    for (size_t i = 0; i < values_.size(); ++i)
        out << 2.0 * M_PI * i / values_.size() << " " << values_[i] << "\n";
}

double PhiProfile::eval(double alpha) const {
    const size_t n = values_.size();
    double t = std::fmod(alpha, 2.0 * M_PI);
    if (t < 0.0) t += 2.0 * M_PI;
    double u = t * n / (2.0 * M_PI);
    size_t i = (size_t)u;
    if (i >= n) i = n - 1;
    double frac = u - i;
    return values_[i] + frac * (values_[(i + 1) % n] - values_[i]);
}

double project_anisotropy(const AnisotropyFn& a, int n, double s, Vec2 x,
                          double* stderr_out) {
    if (stderr_out) *stderr_out = 0.0;
    if (a.dimension() != n)
        throw std::invalid_argument("project_anisotropy: dimension mismatch");
    if (std::abs(norm(x) - 1.0) > 1e-12)
        throw std::domain_error("project_anisotropy: x must be a unit vector");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("project_anisotropy: s in (0,1)");

    if (n == 2) return a(VecN{x.x, x.y});

    if (n == 3) {
        // integral over ybar in R of a(->(x1, ybar, x2)) (1+ybar^2)^{-(3+s)/2},
        // compactified by ybar = tan(u).
        auto f = [&](double u) {
            const double c = std::cos(u);
            if (c <= 0.0) return 0.0;
            const double y = std::tan(u);
            const double scale = 1.0 / std::sqrt(1.0 + y * y);
            VecN w{x.x * scale, y * scale, x.y * scale};
            // (1+y^2)^{-(3+s)/2} * sec^2 u = cos^{1+s} u
            return a(w) * std::pow(c, 1.0 + s);
        };
        return integrate_adaptive(f, -0.5 * M_PI, 0.5 * M_PI, 1e-10);
    }

    // n >= 4: importance sampling from the exact weight
    // p(y) ∝ (1+|y|^2)^{-(n+s)/2} on R^{n-2} (scaled multivariate t),
    // so the estimate is Z * mean(a), Z = pi^{m/2} Gamma((s+2)/2) / Gamma((n+s)/2).
    const int m = n - 2;
    const double q = 0.5 * (n + s);
    const double Z = std::exp(0.5 * m * std::log(M_PI) + std::lgamma(q - 0.5 * m) -
                              std::lgamma(q));
    const double nu = s + 2.0; // t degrees of freedom: (nu+m)/2 = q
    std::mt19937_64 rng(0x51ab5eedULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::gamma_distribution<double> chi2(0.5 * nu, 2.0);
    const int samples = 1'000'000;
    double sum = 0.0, sum2 = 0.0;
    VecN w(n);
    for (int i = 0; i < samples; ++i) {
        const double denom = std::sqrt(chi2(rng) / 1.0); // y = z / sqrt(w_chi2)
        double y2 = 0.0;
        for (int j = 0; j < m; ++j) {
            double yj = gauss(rng) / denom;
            w[1 + j] = yj;
            y2 += yj * yj;
        }
        const double scale = 1.0 / std::sqrt(1.0 + y2);
        w[0] = x.x * scale;
        w[n - 1] = x.y * scale;
        for (int j = 0; j < m; ++j) w[1 + j] *= scale;
        const double v = a(w);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sum2 / samples - mean * mean);
    const double se = Z * std::sqrt(var / samples);
    if (stderr_out) *stderr_out = se;
    const double value = Z * mean;
    if (se > 1e-2 * std::max(1.0, std::abs(value)))
        throw accuracy_error("project_anisotropy: Monte Carlo variance too high");
    return value;
}

PhiProfile build_phi(const AnisotropyFn& a, int n, double s, int grid_size) {
    if (grid_size < 16 || grid_size % 2 != 0)
        throw std::invalid_argument("build_phi: grid size must be even and >= 16");
    std::vector<double> vals(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        double alpha = 2.0 * M_PI * i / grid_size;
        vals[i] = project_anisotropy(a, n, s, unit_at(alpha));
    }
    return PhiProfile::from_samples(std::move(vals), s);
}

} // namespace nlcap
