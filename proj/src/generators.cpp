#include "sweepout/generators.hpp"

#include "sweepout/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace sweepout {

namespace {

Simplex sorted(Simplex s, int dim)
{
    for (int i = dim + 1; i < 4; ++i) s[i] = -1;
    std::sort(s.begin(), s.begin() + dim + 1);
    return s;
}

} // namespace

FlatComplex from_embedding(int dim, const std::vector<Point>& coords, std::vector<Simplex> simplices)
{
    EdgeLengths lengths;
    for (const auto& s : simplices)
        for (int i = 0; i <= dim; ++i)
            for (int j = i + 1; j <= dim; ++j) lengths[edge_key(s[i], s[j])] = distance(coords[s[i]], coords[s[j]]);
    return FlatComplex::build(dim, static_cast<int>(coords.size()), std::move(simplices), lengths);
}

FlatComplex flat_torus_2d(int k)
{
    if (k < 3) throw Error(ErrorCode::BadParams, "flat-torus-2d needs k >= 3");
    auto id = [k](int i, int j) { return ((i % k + k) % k) * k + (j % k + k) % k; };
    std::vector<Simplex> simplices;
    EdgeLengths lengths;
    const double h = 1.0 / k;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            simplices.push_back(sorted({a, b, c, -1}, 2));
            simplices.push_back(sorted({a, c, d, -1}, 2));
            lengths[edge_key(a, b)] = h;
            lengths[edge_key(a, d)] = h;
            lengths[edge_key(a, c)] = std::sqrt(2.0) * h;
        }
    return FlatComplex::build(2, k * k, std::move(simplices), lengths);
}

FlatComplex flat_torus_3d(int k)
{
    if (k < 3) throw Error(ErrorCode::BadParams, "flat-torus-3d needs k >= 3");
    auto id = [k](int i, int j, int l) {
        auto w = [k](int x) { return (x % k + k) % k; };
        return (w(i) * k + w(j)) * k + w(l);
    };
    const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::vector<Simplex> simplices;
    EdgeLengths lengths;
    const double h = 1.0 / k;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l)
                for (const auto& p : perms) {
                    std::array<std::array<int, 3>, 4> off{};
                    for (int s = 1; s < 4; ++s) {
                        off[s] = off[s - 1];
                        ++off[s][p[s - 1]];
                    }
                    Simplex t{};
                    for (int s = 0; s < 4; ++s) t[s] = id(i + off[s][0], j + off[s][1], l + off[s][2]);
                    for (int a = 0; a < 4; ++a)
                        for (int b = a + 1; b < 4; ++b) {
                            int steps = 0;
                            for (int c = 0; c < 3; ++c) steps += off[b][c] - off[a][c];
                            lengths[edge_key(t[a], t[b])] = std::sqrt(static_cast<double>(steps)) * h;
                        }
                    simplices.push_back(sorted(t, 3));
                }
    return FlatComplex::build(3, k * k * k, std::move(simplices), lengths);
}

FlatComplex icosphere(int subdivisions, double radius)
{
    if (subdivisions < 0 || subdivisions > 8 || !(radius > 0.0))
        throw Error(ErrorCode::BadParams, "icosphere needs 0 <= subdivisions <= 8 and radius > 0");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Point> pts{{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                           {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    std::vector<std::array<int, 3>> tris{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    auto project = [radius](const Point& p) { return (radius / norm(p)) * p; };
    for (auto& p : pts) p = project(p);
    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            pts.push_back(project(lerp(pts[a], pts[b], 0.5)));
            const int id = static_cast<int>(pts.size()) - 1;
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(tris.size() * 4);
        for (const auto& t : tris) {
            const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }
    std::vector<Simplex> simplices;
    for (const auto& t : tris) simplices.push_back(sorted({t[0], t[1], t[2], -1}, 2));
    return from_embedding(2, pts, std::move(simplices));
}

FlatComplex convex_polygon_disk(int m, int rings)
{
    if (m < 3 || rings < 1) throw Error(ErrorCode::BadParams, "convex-polygon-disk needs m >= 3 and rings >= 1");
    const double R = std::sqrt(2.0 / (m * std::sin(2.0 * std::numbers::pi / m)));
    std::vector<Point> pts{{0, 0, 0}};
    for (int r = 1; r <= rings; ++r)
        for (int i = 0; i < m; ++i) {
            const double a = 2.0 * std::numbers::pi * i / m;
            const double s = R * r / rings;
            pts.push_back({s * std::cos(a), s * std::sin(a), 0.0});
        }
    auto id = [m](int r, int i) { return r == 0 ? 0 : 1 + (r - 1) * m + (i % m); };
    std::vector<Simplex> simplices;
    for (int i = 0; i < m; ++i) simplices.push_back(sorted({0, id(1, i), id(1, i + 1), -1}, 2));
    for (int r = 1; r < rings; ++r)
        for (int i = 0; i < m; ++i) {
            simplices.push_back(sorted({id(r, i), id(r + 1, i), id(r + 1, i + 1), -1}, 2));
            simplices.push_back(sorted({id(r, i), id(r + 1, i + 1), id(r, i + 1), -1}, 2));
        }
    return from_embedding(2, pts, std::move(simplices));
}

FlatComplex planar_grid(int nx, int ny, double h, const std::function<bool(int, int)>& keep)
{
    std::vector<int> remap((nx + 1) * (ny + 1), -1);
    std::vector<Point> pts;
    std::vector<Simplex> simplices;
    auto vid = [&](int i, int j) {
        int& slot = remap[i * (ny + 1) + j];
        if (slot < 0) {
            slot = static_cast<int>(pts.size());
            pts.push_back({i * h, j * h, 0.0});
        }
        return slot;
    };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            if (!keep(i, j)) continue;
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            simplices.push_back(sorted({a, b, c, -1}, 2));
            simplices.push_back(sorted({a, c, d, -1}, 2));
        }
    if (simplices.empty()) throw Error(ErrorCode::BadParams, "planar grid keeps no squares");
    return from_embedding(2, pts, std::move(simplices));
}

FlatComplex scaled(const FlatComplex& K, double s)
{
    auto lengths = K.edge_length_map();
    for (auto& [key, len] : lengths) len *= s;
    return FlatComplex::build(K.dim(), K.num_vertices(), K.simplices(), lengths);
}

double max_angle_defect(const FlatComplex& K)
{
    if (K.dim() != 2) return 0.0;
    std::vector<double> angle(K.num_vertices(), 0.0);
    for (int s = 0; s < K.num_simplices(); ++s) {
        const auto p = K.realization(s);
        const auto v = K.simplex(s);
        for (int i = 0; i < 3; ++i) {
            const Point a = p[(i + 1) % 3] - p[i], b = p[(i + 2) % 3] - p[i];
            angle[v[i]] += std::atan2(norm(cross(a, b)), dot(a, b));
        }
    }
    const auto& boundary = K.boundary_vertex_mask();
    double worst = 0.0;
    for (int v = 0; v < K.num_vertices(); ++v)
        if (!boundary[v]) worst = std::max(worst, std::abs(2.0 * std::numbers::pi - angle[v]));
    return worst;
}

FlatComplex generate(const std::string& desc)
{
    const auto cut = desc.find_first_of("(:");
    const std::string name = desc.substr(0, cut);
    std::vector<double> args;
    if (cut != std::string::npos) {
        std::string rest = desc.substr(cut + 1);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::replace(rest.begin(), rest.end(), ')', ' ');
        std::istringstream in(rest);
        double x = 0.0;
        while (in >> x) args.push_back(x);
        if (!in.eof()) throw Error(ErrorCode::BadParams, "cannot parse generator parameters in '" + desc + "'");
    }
    auto arg = [&](std::size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };
    auto int_arg = [&](std::size_t i, int fallback) {
        const double x = arg(i, fallback);
        if (x != std::floor(x)) throw Error(ErrorCode::BadParams, "integer parameter expected in '" + desc + "'");
        return static_cast<int>(x);
    };
    if (name == "flat-torus-2d") return flat_torus_2d(int_arg(0, 16));
    if (name == "flat-torus-3d") return flat_torus_3d(int_arg(0, 4));
    if (name == "icosphere") return icosphere(int_arg(0, 3), arg(1, 1.0));
    if (name == "convex-polygon-disk") return convex_polygon_disk(int_arg(0, 8), int_arg(1, 1));
    throw Error(ErrorCode::BadParams, "unknown generator '" + name + "'");
}

} // namespace sweepout
