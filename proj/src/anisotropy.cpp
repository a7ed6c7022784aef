#include "nlcap/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nlcap {

AnisotropyFn AnisotropyFn::constant(int n, double value) {
    if (n < 2) throw std::invalid_argument("anisotropy: dimension must be >= 2");
    if (!(value > 0.0)) throw std::invalid_argument("anisotropy: constant must be positive");
    AnisotropyFn a;
    a.n_ = n;
    a.eval_ = [value](const VecN&) { return value; };
    if (n == 2) a.eval_angular_ = [value](double) { return value; };
    a.a_min_ = a.a_max_ = value;
    return a;
}

AnisotropyFn AnisotropyFn::from_function(int n, std::function<double(const VecN&)> f) {
    if (n < 2) throw std::invalid_argument("anisotropy: dimension must be >= 2");
    if (!f) throw std::invalid_argument("anisotropy: null evaluator");
    AnisotropyFn a;
    a.n_ = n;
    a.eval_ = std::move(f);
    if (n == 2) {
        auto ev = a.eval_;
        a.eval_angular_ = [ev](double psi) {
            return ev(VecN{std::cos(psi), std::sin(psi)});
        };
    }
    a.probe_bounds();
    return a;
}

AnisotropyFn AnisotropyFn::from_angular(std::function<double(double)> f) {
    if (!f) throw std::invalid_argument("anisotropy: null evaluator");
    AnisotropyFn a;
    a.n_ = 2;
    a.eval_angular_ = std::move(f);
    auto ev = a.eval_angular_;
    a.eval_ = [ev](const VecN& w) { return ev(std::atan2(w[1], w[0])); };
    a.probe_bounds();
    return a;
}

AnisotropyFn AnisotropyFn::from_table(std::vector<double> angles, std::vector<double> values) {
    if (angles.size() != values.size() || angles.size() < 2)
        throw std::invalid_argument("anisotropy table: need >= 2 (angle, value) pairs");
    // Sort by angle reduced to [0, 2*pi).
    std::vector<size_t> order(angles.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto wrap = [](double t) {
        t = std::fmod(t, 2.0 * M_PI);
        return t < 0.0 ? t + 2.0 * M_PI : t;
    };
    for (auto& t : angles) t = wrap(t);
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return angles[i] < angles[j]; });
    auto xs = std::make_shared<std::vector<double>>();
    auto ys = std::make_shared<std::vector<double>>();
    for (size_t i : order) {
        xs->push_back(angles[i]);
        ys->push_back(values[i]);
    }
    auto interp = [xs, ys, wrap](double psi) {
        psi = wrap(psi);
        const auto& x = *xs;
        const auto& y = *ys;
        auto it = std::upper_bound(x.begin(), x.end(), psi);
        size_t hi = it - x.begin();
        double x0, x1, y0, y1;
        if (hi == 0 || hi == x.size()) { // wrap-around segment
            x0 = x.back() - 2.0 * M_PI * (hi == 0 ? 1.0 : 0.0);
            x1 = x.front() + 2.0 * M_PI * (hi == 0 ? 0.0 : 1.0);
            y0 = y.back();
            y1 = y.front();
        } else {
            x0 = x[hi - 1];
            x1 = x[hi];
            y0 = y[hi - 1];
            y1 = y[hi];
        }
        double t = (x1 == x0) ? 0.0 : (psi - x0) / (x1 - x0);
        return y0 + t * (y1 - y0);
    };
    AnisotropyFn a;
    a.n_ = 2;
    a.tabulated_ = true;
    // Enforced evenness: average psi and psi + pi.
    a.eval_angular_ = [interp](double psi) {
        return 0.5 * (interp(psi) + interp(psi + M_PI));
    };
    auto ev = a.eval_angular_;
    a.eval_ = [ev](const VecN& w) { return ev(std::atan2(w[1], w[0])); };
    a.probe_bounds();
    return a;
}

AnisotropyFn AnisotropyFn::load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("anisotropy table: cannot open " + path);
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
    if (angles.empty()) throw std::runtime_error("anisotropy table: no data in " + path);
    return from_table(std::move(angles), std::move(values));
}

void AnisotropyFn::save_table(const std::string& path, int samples) const {
    if (n_ != 2) throw std::invalid_argument("anisotropy save_table: n=2 only");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("anisotropy table: cannot write " + path);
    out.precision(17);
    for (int i = 0; i < samples; ++i) {
        double psi = 2.0 * M_PI * i / samples;
        out << psi << " " << angular(psi) << "\n";
    }
}

double AnisotropyFn::operator()(const VecN& omega) const {
    if ((int)omega.size() != n_)
        throw std::invalid_argument("anisotropy: direction has wrong dimension");
    return eval_(omega);
}

double AnisotropyFn::angular(double psi) const {
    if (n_ != 2) throw std::invalid_argument("anisotropy angular(): n=2 only");
    return eval_angular_(psi);
}

void AnisotropyFn::probe_bounds() {
    double lo = INFINITY, hi = -INFINITY;
    if (n_ == 2) {
        for (int i = 0; i < 4096; ++i) {
            double v = eval_angular_(2.0 * M_PI * (i + 0.5) / 4096);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    } else {
        // Fixed-seed direction sampling; bounds are estimates for n >= 3.
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < 8192; ++i) {
            VecN w(n_);
            double r2 = 0.0;
            for (auto& c : w) {
                c = gauss(rng);
                r2 += c * c;
            }
            double r = std::sqrt(r2);
            if (r < 1e-12) continue;
            for (auto& c : w) c /= r;
            double v = eval_(w);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    a_min_ = lo;
    a_max_ = hi;
}

} // namespace nlcap
