#pragma once

#include <cmath>
#include <vector>

namespace nlcap {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
inline Vec2 operator*(Vec2 a, double t) { return {t * a.x, t * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Polar angle in [0, 2*pi).
inline double polar_angle(Vec2 a) {
    double t = std::atan2(a.y, a.x);
    if (t < 0.0) t += 2.0 * M_PI;
    return t;
}

using VecN = std::vector<double>;

} // namespace nlcap
