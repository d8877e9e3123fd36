#pragma once

#include <cmath>

#include "arcjoin/errors.hpp"

namespace arcjoin {

// Rotation sense is defined by formula, not by display orientation:
// kLeft is the counterclockwise quarter turn (-y, x) in the coordinate
// frame the caller works in.
enum class Side { kLeft, kRight };

inline Side opposite(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x, double y) : x(x), y(y) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr bool operator==(const Vec2&) const = default;

    bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 v) { return std::sqrt(dot(v, v)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

constexpr double kDegenerateVectorEps = 1e-12;

// Unit vector in the direction of v. Throws on near-zero input rather
// than returning garbage.
inline Vec2 unit(Vec2 v) {
    const double len = norm(v);
    if (len <= kDegenerateVectorEps) {
        throw GeometryError("unit(): degenerate vector");
    }
    return v / len;
}

// Quarter-turn rotation preserving the norm.
constexpr Vec2 perp(Vec2 v, Side side) {
    return side == Side::kLeft ? Vec2{-v.y, v.x} : Vec2{v.y, -v.x};
}

inline Vec2 rotate(Vec2 v, double radians) {
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Signed exterior turn from one unit direction to the next, in (-pi, pi].
// Positive means a left turn (toward perp(dir_in, kLeft)).
inline double signed_turn_angle(Vec2 dir_in, Vec2 dir_out) {
    return std::atan2(cross(dir_in, dir_out), dot(dir_in, dir_out));
}

inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }

} // namespace arcjoin
