#pragma once

#include <cmath>

namespace ecosim {

// Position/direction in space. 2-D worlds keep z == 0 throughout.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm_sq() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_sq()); }

    Vec3 normalized() const {
        const double n = norm();
        if (n <= 0.0) return {1.0, 0.0, 0.0};
        return {x / n, y / n, z / n};
    }

    // Rotation about the z axis; heading updates for planar locomotion.
    Vec3 rotated_z(double angle_rad) const {
        const double c = std::cos(angle_rad);
        const double s = std::sin(angle_rad);
        return {c * x - s * y, s * x + c * y, z};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

}  // namespace ecosim
