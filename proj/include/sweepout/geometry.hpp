#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>

namespace sweepout {

using Point = std::array<double, 3>;

inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Point cross(const Point& a, const Point& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }
inline Point lerp(const Point& a, const Point& b, double s) { return a + s * (b - a); }

/// Edge lengths of an n-simplex, indexed [i][j] for local vertices.
using LengthTable = std::array<std::array<double, 4>, 4>;

/// Embeds an n-simplex (n = 1, 2 or 3) with the given edge lengths in R^n by
/// trilateration: vertex 0 at the origin, vertex 1 on the x axis, vertex 2 in
/// the upper xy half plane, vertex 3 above it. Returns nullopt when the squared
/// height of some vertex is not strictly positive, which is exactly the
/// Cayley-Menger positivity condition.
std::optional<std::array<Point, 4>> realize_simplex(int dim, const LengthTable& lengths);

/// n-volume of the simplex spanned by the first dim+1 points.
double simplex_volume(int dim, std::span<const Point> pts);

/// Intersection of the level set {f = t} of the linear interpolant of `values`
/// with the simplex. For dim 2 the polygon is a segment, for dim 3 a triangle
/// or a quadrilateral listed in cyclic order.
struct Slice {
    int count = 0;
    std::array<Point, 4> points{};
    double volume = 0.0;
};

Slice slice_simplex(int dim, std::span<const Point> pts, std::span<const double> values, double t);

/// Volume of {x in simplex : f(x) <= t}.
double sublevel_volume(int dim, std::span<const Point> pts, std::span<const double> values, double t);

/// Gradient norm of the linear interpolant of `values` on the simplex.
double gradient_norm(int dim, std::span<const Point> pts, std::span<const double> values);

} // namespace sweepout
