#include "sweepout/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace sweepout {

std::optional<std::array<Point, 4>> realize_simplex(int dim, const LengthTable& l)
{
    std::array<Point, 4> x{};
    double scale = 0.0;
    for (int i = 0; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) scale = std::max(scale, l[i][j]);
    if (!(scale > 0.0)) return std::nullopt;
    const double tol = 1e-14 * scale * scale;

    const double d01 = l[0][1];
    x[1] = {d01, 0.0, 0.0};
    if (dim == 1) return x;

    const double d02 = l[0][2], d12 = l[1][2];
    const double px = (d01 * d01 + d02 * d02 - d12 * d12) / (2.0 * d01);
    const double py2 = d02 * d02 - px * px;
    if (!(py2 > tol)) return std::nullopt;
    x[2] = {px, std::sqrt(py2), 0.0};
    if (dim == 2) return x;

    const double d03 = l[0][3], d13 = l[1][3], d23 = l[2][3];
    const double qx = (d01 * d01 + d03 * d03 - d13 * d13) / (2.0 * d01);
    const double qy = (d03 * d03 - d23 * d23 + x[2][0] * x[2][0] + x[2][1] * x[2][1] - 2.0 * qx * x[2][0])
                      / (2.0 * x[2][1]);
    const double qz2 = d03 * d03 - qx * qx - qy * qy;
    if (!(qz2 > tol)) return std::nullopt;
    x[3] = {qx, qy, std::sqrt(qz2)};
    return x;
}

double simplex_volume(int dim, std::span<const Point> p)
{
    switch (dim) {
    case 1: return distance(p[0], p[1]);
    case 2: return 0.5 * norm(cross(p[1] - p[0], p[2] - p[0]));
    case 3: return std::abs(dot(p[1] - p[0], cross(p[2] - p[0], p[3] - p[0]))) / 6.0;
    default: return 0.0;
    }
}

namespace {

Point edge_point(std::span<const Point> p, std::span<const double> v, int lo, int hi, double t)
{
    const double s = (t - v[lo]) / (v[hi] - v[lo]);
    return lerp(p[lo], p[hi], s);
}

double polygon_area(std::span<const Point> q)
{
    Point acc{0.0, 0.0, 0.0};
    for (std::size_t i = 1; i + 1 < q.size(); ++i) acc = acc + cross(q[i] - q[0], q[i + 1] - q[0]);
    return 0.5 * norm(acc);
}

double prism_volume(const Point& a0, const Point& a1, const Point& a2, const Point& b0, const Point& b1,
                    const Point& b2)
{
    auto tet = [](const Point& p, const Point& q, const Point& r, const Point& s) {
        return std::abs(dot(q - p, cross(r - p, s - p))) / 6.0;
    };
    return tet(a0, a1, a2, b0) + tet(a1, a2, b0, b1) + tet(a2, b0, b1, b2);
}

} // namespace

Slice slice_simplex(int dim, std::span<const Point> p, std::span<const double> v, double t)
{
    Slice out;
    std::array<int, 4> below{}, above{};
    int nb = 0, na = 0;
    for (int i = 0; i <= dim; ++i) {
        if (v[i] < t)
            below[nb++] = i;
        else
            above[na++] = i;
    }
    if (nb == 0 || na == 0) return out;

    if (dim == 2) {
        // one vertex isolated on one side, the segment joins its two edges
        const int lone = nb == 1 ? below[0] : above[0];
        int k = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == lone) continue;
            const int lo = v[lone] < v[i] ? lone : i;
            const int hi = lo == lone ? i : lone;
            out.points[k++] = edge_point(p, v, lo, hi, t);
        }
        out.count = 2;
        out.volume = distance(out.points[0], out.points[1]);
        return out;
    }

    if (dim == 3) {
        if (nb == 1 || na == 1) {
            const int lone = nb == 1 ? below[0] : above[0];
            int k = 0;
            for (int i = 0; i < 4; ++i) {
                if (i == lone) continue;
                const int lo = v[lone] < v[i] ? lone : i;
                const int hi = lo == lone ? i : lone;
                out.points[k++] = edge_point(p, v, lo, hi, t);
            }
            out.count = 3;
        } else {
            const int a = below[0], b = below[1], c = above[0], d = above[1];
            out.points = {edge_point(p, v, a, c, t), edge_point(p, v, a, d, t), edge_point(p, v, b, d, t),
                          edge_point(p, v, b, c, t)};
            out.count = 4;
        }
        out.volume = polygon_area(std::span<const Point>(out.points.data(), out.count));
        return out;
    }

    if (dim == 1) {
        out.count = 1;
        out.points[0] = edge_point(p, v, below[0], above[0], t);
        out.volume = 1.0;
    }
    return out;
}

double sublevel_volume(int dim, std::span<const Point> p, std::span<const double> v, double t)
{
    std::array<int, 4> below{}, above{};
    int nb = 0, na = 0;
    for (int i = 0; i <= dim; ++i) {
        if (v[i] <= t)
            below[nb++] = i;
        else
            above[na++] = i;
    }
    const double full = simplex_volume(dim, p);
    if (na == 0) return full;
    if (nb == 0) return 0.0;

    auto pt = [&](int i, int j) {
        const int lo = v[i] < v[j] ? i : j;
        return edge_point(p, v, lo, lo == i ? j : i, t);
    };

    if (dim == 2) {
        if (nb == 1) {
            const int a = below[0], b = above[0], c = above[1];
            std::array<Point, 3> tri{p[a], pt(a, b), pt(a, c)};
            return polygon_area(tri);
        }
        const int c = above[0], a = below[0], b = below[1];
        std::array<Point, 3> tri{p[c], pt(c, a), pt(c, b)};
        return std::max(0.0, full - polygon_area(tri));
    }

    if (dim == 3) {
        auto corner = [&](int lone, const std::array<int, 4>& others) {
            std::array<Point, 4> tet{p[lone], pt(lone, others[0]), pt(lone, others[1]), pt(lone, others[2])};
            return simplex_volume(3, tet);
        };
        if (nb == 1) return corner(below[0], {above[0], above[1], above[2], 0});
        if (na == 1) return std::max(0.0, full - corner(above[0], {below[0], below[1], below[2], 0}));
        const int a = below[0], b = below[1], c = above[0], d = above[1];
        return prism_volume(p[a], pt(a, c), pt(a, d), p[b], pt(b, c), pt(b, d));
    }

    // dim 1
    const double s = (t - v[below[0]]) / (v[above[0]] - v[below[0]]);
    return s * full;
}

double gradient_norm(int dim, std::span<const Point> p, std::span<const double> v)
{
    if (dim == 2) {
        const Point e1 = p[1] - p[0], e2 = p[2] - p[0];
        const double det = e1[0] * e2[1] - e1[1] * e2[0];
        const double b1 = v[1] - v[0], b2 = v[2] - v[0];
        const double gx = (b1 * e2[1] - b2 * e1[1]) / det;
        const double gy = (e1[0] * b2 - e2[0] * b1) / det;
        return std::hypot(gx, gy);
    }
    if (dim == 3) {
        const Point e1 = p[1] - p[0], e2 = p[2] - p[0], e3 = p[3] - p[0];
        const double det = dot(e1, cross(e2, e3));
        // rows e_i, solve E g = b by Cramer with the reciprocal basis
        const Point r1 = cross(e2, e3), r2 = cross(e3, e1), r3 = cross(e1, e2);
        const double b1 = v[1] - v[0], b2 = v[2] - v[0], b3 = v[3] - v[0];
        const Point g = (1.0 / det) * (b1 * r1 + b2 * r2 + b3 * r3);
        return norm(g);
    }
    return std::abs(v[1] - v[0]) / distance(p[0], p[1]);
}

} // namespace sweepout
