#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdmix {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
constexpr bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

/// Rotation by -90 degrees: (x, y) -> (y, -x).
constexpr Vec2 rotate_cw(const Vec2& a) { return {a.y, -a.x}; }

/// Signed area of (a, b, c); positive for counterclockwise order.
constexpr double signed_area(const Vec2& a, const Vec2& b, const Vec2& c)
{
    return 0.5 * cross(b - a, c - a);
}

/// Subdomain colour of the bipartite map.
enum class Region : std::uint8_t { one = 1, two = 2 };

inline std::string to_string(Region r) { return r == Region::one ? "omega1" : "omega2"; }

/// Open quadrant containing p (1..4, counterclockwise from the positive
/// quadrant). Points on an axis have no quadrant and raise.
inline int quadrant_of(const Vec2& p)
{
    if (p.x > 0.0 && p.y > 0.0) return 1;
    if (p.x < 0.0 && p.y > 0.0) return 2;
    if (p.x < 0.0 && p.y < 0.0) return 3;
    if (p.x > 0.0 && p.y < 0.0) return 4;
    throw std::domain_error("quadrant_of: point lies on a coordinate axis");
}

/// Omega1 = Q1 u Q3, Omega2 = Q2 u Q4.
constexpr Region region_of_quadrant(int quadrant)
{
    return (quadrant == 1 || quadrant == 3) ? Region::one : Region::two;
}

/// True when p lies on the interface (-1,1)x{0} u {0}x(-1,1) up to tol.
inline bool on_interface(const Vec2& p, double tol = 1e-12)
{
    const bool on_x_axis = std::abs(p.y) <= tol && std::abs(p.x) < 1.0 + tol;
    const bool on_y_axis = std::abs(p.x) <= tol && std::abs(p.y) < 1.0 + tol;
    return on_x_axis || on_y_axis;
}

} // namespace pdmix
