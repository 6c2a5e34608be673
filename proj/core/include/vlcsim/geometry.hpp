#pragma once

#include <cmath>
#include <stdexcept>

namespace vlcsim {

/// Cartesian position or direction in meters.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend constexpr Vec3 operator-(Vec3 v) { return {-v.x, -v.y, -v.z}; }
    friend constexpr bool operator==(Vec3 a, Vec3 b) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

inline bool is_finite(Vec3 v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Scales to unit length; throws on zero or non-finite input.
inline Vec3 normalized(Vec3 v) {
    if (!is_finite(v)) throw std::invalid_argument("normalized: non-finite vector");
    const double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return {v.x / n, v.y / n, v.z / n};
}

}  // namespace vlcsim
