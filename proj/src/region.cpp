#include "nlcap/region.hpp"

#include "nlcap/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nlcap {

namespace {

constexpr double kDirEps = 1e-14;

class HalfSpace final : public Region {
public:
    HalfSpace(const Vec2& normal, double offset) {
        const double len = norm(normal);
        if (!(len > 0.0)) throw std::invalid_argument("region_halfspace: zero normal");
        n_ = normal * (1.0 / len);
        off_ = offset / len;
    }
    bool contains(const Vec2& p) const override { return dot(n_, p) <= off_; }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        const double den = dot(n_, u);
        if (std::abs(den) < kDirEps) return;
        const double rho = (off_ - dot(n_, p)) / den;
        if (rho > 0.0) out.push_back(rho);
    }
    void critical_dirs(const Vec2&, std::vector<double>& out) const override {
        const double psi = polar_angle(Vec2{-n_.y, n_.x});
        out.push_back(psi);
        out.push_back(psi + M_PI);
    }
    bool bounds(Vec2&, Vec2&) const override { return false; }

private:
    Vec2 n_;
    double off_;
};

class WedgeRegion final : public Region {
public:
    WedgeRegion(double t1, double t2) : t1_(t1), t2_(t2) {
        if (!(t1 >= 0.0 && t1 < t2 && t2 <= 2.0 * M_PI))
            throw std::invalid_argument("region_wedge: need 0 <= theta1 < theta2 <= 2*pi");
    }
    bool contains(const Vec2& p) const override {
        if (norm(p) == 0.0) return false;
        const double a = polar_angle(p);
        return a > t1_ && a < t2_;
    }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        for (double g : {t1_, t2_}) {
            const Vec2 d = unit_at(g);
            const double den = cross(u, d);
            if (std::abs(den) < kDirEps) continue;
            const double rho = -cross(p, d) / den;
            if (rho <= 0.0) continue;
            if (dot(p, d) + rho * dot(u, d) > 0.0) out.push_back(rho);
        }
    }
    void critical_dirs(const Vec2& x, std::vector<double>& out) const override {
        out.insert(out.end(), {t1_, t1_ + M_PI, t2_, t2_ + M_PI});
        if (norm(x) > 0.0) {
            const double apex = polar_angle(x * -1.0);
            out.push_back(apex);
            out.push_back(apex + M_PI);
        }
    }
    bool bounds(Vec2&, Vec2&) const override { return false; }

private:
    double t1_, t2_;
};

class BallRegion final : public Region {
public:
    BallRegion(const Vec2& c, double r) : c_(c), r_(r) {
        if (!(r > 0.0)) throw std::invalid_argument("region_ball: radius must be positive");
    }
    bool contains(const Vec2& p) const override { return norm(p - c_) <= r_; }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        const Vec2 d = p - c_;
        const double b = dot(d, u);
        const double c0 = dot(d, d) - r_ * r_;
        const double disc = b * b - c0;
        if (disc <= 0.0) return;
        const double sq = std::sqrt(disc);
        if (-b - sq > 0.0) out.push_back(-b - sq);
        if (-b + sq > 0.0) out.push_back(-b + sq);
    }
    void critical_dirs(const Vec2& x, std::vector<double>& out) const override {
        const double dist = norm(c_ - x);
        if (dist <= 0.0 || dist < r_) return;
        const double alpha = polar_angle(c_ - x);
        const double beta = std::asin(std::min(1.0, r_ / dist));
        out.insert(out.end(), {alpha - beta, alpha, alpha + beta});
    }
    bool bounds(Vec2& lo, Vec2& hi) const override {
        lo = Vec2{c_.x - r_, c_.y - r_};
        hi = Vec2{c_.x + r_, c_.y + r_};
        return true;
    }

private:
    Vec2 c_;
    double r_;
};

class BoxRegion final : public Region {
public:
    BoxRegion(const Vec2& lo, const Vec2& hi) : lo_(lo), hi_(hi) {
        if (!(lo.x < hi.x && lo.y < hi.y))
            throw std::invalid_argument("region_box: need lo < hi componentwise");
    }
    bool contains(const Vec2& p) const override {
        return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y;
    }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        if (std::abs(u.x) >= kDirEps)
            for (double px : {lo_.x, hi_.x}) {
                const double rho = (px - p.x) / u.x;
                if (rho <= 0.0) continue;
                const double y = p.y + rho * u.y;
                if (y >= lo_.y && y <= hi_.y) out.push_back(rho);
            }
        if (std::abs(u.y) >= kDirEps)
            for (double py : {lo_.y, hi_.y}) {
                const double rho = (py - p.y) / u.y;
                if (rho <= 0.0) continue;
                const double x = p.x + rho * u.x;
                if (x >= lo_.x && x <= hi_.x) out.push_back(rho);
            }
    }
    void critical_dirs(const Vec2& x, std::vector<double>& out) const override {
        for (const Vec2& c : {Vec2{lo_.x, lo_.y}, Vec2{hi_.x, lo_.y}, Vec2{lo_.x, hi_.y},
                              Vec2{hi_.x, hi_.y}}) {
            const Vec2 d = c - x;
            if (norm(d) > 0.0) out.push_back(polar_angle(d));
        }
        out.insert(out.end(), {0.0, 0.5 * M_PI, M_PI, 1.5 * M_PI});
    }
    bool bounds(Vec2& lo, Vec2& hi) const override {
        lo = lo_;
        hi = hi_;
        return true;
    }

private:
    Vec2 lo_, hi_;
};

class ComplementRegion final : public Region {
public:
    explicit ComplementRegion(RegionPtr r) : r_(std::move(r)) {
        if (!r_) throw std::invalid_argument("region_complement: null region");
    }
    bool contains(const Vec2& p) const override { return !r_->contains(p); }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        r_->ray_hits(p, u, out);
    }
    void critical_dirs(const Vec2& x, std::vector<double>& out) const override {
        r_->critical_dirs(x, out);
    }
    bool bounds(Vec2&, Vec2&) const override { return false; }

private:
    RegionPtr r_;
};

class IntersectRegion final : public Region {
public:
    IntersectRegion(RegionPtr a, RegionPtr b) : a_(std::move(a)), b_(std::move(b)) {
        if (!a_ || !b_) throw std::invalid_argument("region_intersect: null region");
    }
    bool contains(const Vec2& p) const override {
        return a_->contains(p) && b_->contains(p);
    }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        a_->ray_hits(p, u, out);
        b_->ray_hits(p, u, out);
    }
    void critical_dirs(const Vec2& x, std::vector<double>& out) const override {
        a_->critical_dirs(x, out);
        b_->critical_dirs(x, out);
    }
    bool bounds(Vec2& lo, Vec2& hi) const override {
        Vec2 la, ha, lb, hb;
        const bool ba = a_->bounds(la, ha), bb = b_->bounds(lb, hb);
        if (!ba && !bb) return false;
        if (ba && bb) {
            lo = Vec2{std::max(la.x, lb.x), std::max(la.y, lb.y)};
            hi = Vec2{std::min(ha.x, hb.x), std::min(ha.y, hb.y)};
        } else if (ba) {
            lo = la;
            hi = ha;
        } else {
            lo = lb;
            hi = hb;
        }
        return true;
    }

private:
    RegionPtr a_, b_;
};

class GridMaskRegion final : public Region {
public:
    explicit GridMaskRegion(std::shared_ptr<const GridMask> m) : m_(std::move(m)) {
        if (!m_ || m_->nx <= 0 || m_->ny <= 0)
            throw std::invalid_argument("region_grid_mask: empty mask");
    }
    bool contains(const Vec2& p) const override {
        const int i = static_cast<int>(std::floor((p.x - m_->origin.x) / m_->h));
        const int j = static_cast<int>(std::floor((p.y - m_->origin.y) / m_->h));
        return m_->at(i, j);
    }
    void ray_hits(const Vec2& p, const Vec2& u, std::vector<double>& out) const override {
        const double x0 = m_->origin.x, x1 = x0 + m_->nx * m_->h;
        const double y0 = m_->origin.y, y1 = y0 + m_->ny * m_->h;
        double t0 = 0.0, t1 = HUGE_VAL;
        if (!clip(p.x, u.x, x0, x1, t0, t1)) return;
        if (!clip(p.y, u.y, y0, y1, t0, t1)) return;
        if (!(t1 > t0)) return;
        if (t0 > 0.0) out.push_back(t0);
        out.push_back(t1);
        if (std::abs(u.x) >= kDirEps)
            for (int k = 1; k < m_->nx; ++k) {
                const double t = (x0 + k * m_->h - p.x) / u.x;
                if (t > t0 && t < t1) out.push_back(t);
            }
        if (std::abs(u.y) >= kDirEps)
            for (int k = 1; k < m_->ny; ++k) {
                const double t = (y0 + k * m_->h - p.y) / u.y;
                if (t > t0 && t < t1) out.push_back(t);
            }
    }
    void critical_dirs(const Vec2& x, std::vector<double>& out) const override {
        const double x0 = m_->origin.x, x1 = x0 + m_->nx * m_->h;
        const double y0 = m_->origin.y, y1 = y0 + m_->ny * m_->h;
        for (const Vec2& c : {Vec2{x0, y0}, Vec2{x1, y0}, Vec2{x0, y1}, Vec2{x1, y1}}) {
            const Vec2 d = c - x;
            if (norm(d) > 0.0) out.push_back(polar_angle(d));
        }
        out.insert(out.end(), {0.0, 0.5 * M_PI, M_PI, 1.5 * M_PI});
    }
    bool bounds(Vec2& lo, Vec2& hi) const override {
        lo = m_->origin;
        hi = Vec2{m_->origin.x + m_->nx * m_->h, m_->origin.y + m_->ny * m_->h};
        return true;
    }

private:
    static bool clip(double p, double u, double lo, double hi, double& t0, double& t1) {
        if (std::abs(u) < kDirEps) return p >= lo && p <= hi;
        double ta = (lo - p) / u, tb = (hi - p) / u;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return t1 > t0;
    }

    std::shared_ptr<const GridMask> m_;
};

} // namespace

RegionPtr region_halfspace(const Vec2& normal, double offset) {
    return std::make_shared<HalfSpace>(normal, offset);
}
RegionPtr region_wedge(double theta1, double theta2) {
    return std::make_shared<WedgeRegion>(theta1, theta2);
}
RegionPtr region_ball(const Vec2& center, double radius) {
    return std::make_shared<BallRegion>(center, radius);
}
RegionPtr region_box(const Vec2& lo, const Vec2& hi) {
    return std::make_shared<BoxRegion>(lo, hi);
}
RegionPtr region_complement(RegionPtr r) {
    return std::make_shared<ComplementRegion>(std::move(r));
}
RegionPtr region_intersect(RegionPtr a, RegionPtr b) {
    return std::make_shared<IntersectRegion>(std::move(a), std::move(b));
}
RegionPtr region_grid_mask(std::shared_ptr<const GridMask> mask) {
    return std::make_shared<GridMaskRegion>(std::move(mask));
}

} // namespace nlcap
