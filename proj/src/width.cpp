#include "sweepout/width.hpp"

#include "sweepout/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace sweepout {

MeshView view_of(const FlatComplex& K, std::span<const int> subset)
{
    return {K.dim(), K.simplices(), K.realizations(), subset};
}

double WidthProfile::local(int i, double u) const
{
    const auto& s = samples[i];
    const double x = u - 0.5;
    const double b = 2.0 * (s[2] - s[0]);
    const double a = 8.0 * (s[0] + s[2] - 2.0 * s[1]);
    return s[1] + b * x + a * x * x;
}

double WidthProfile::operator()(double t) const
{
    if (breakpoints.size() < 2 || t < breakpoints.front() || t > breakpoints.back()) return 0.0;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    int i = static_cast<int>(it - breakpoints.begin()) - 1;
    i = std::clamp(i, 0, intervals() - 1);
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    return std::max(0.0, local(i, (t - lo) / (hi - lo)));
}

std::pair<double, double> WidthProfile::interval_max(int i) const
{
    const auto& s = samples[i];
    const double b = 2.0 * (s[2] - s[0]);
    const double a = 8.0 * (s[0] + s[2] - 2.0 * s[1]);
    double best_u = 0.0, best = local(i, 0.0);
    if (const double v = local(i, 1.0); v > best) {
        best = v;
        best_u = 1.0;
    }
    if (a < 0.0) {
        const double x = -b / (2.0 * a);
        if (x > -0.5 && x < 0.5) {
            const double v = local(i, x + 0.5);
            if (v > best) {
                best = v;
                best_u = x + 0.5;
            }
        }
    }
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    return {best, lo + best_u * (hi - lo)};
}

std::vector<double> used_values(const MeshView& mesh, std::span<const double> values)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(mesh.size()) * (mesh.dim + 1));
    for (int i = 0; i < mesh.size(); ++i) {
        const auto& s = mesh.simplices[mesh.at(i)];
        for (int k = 0; k <= mesh.dim; ++k) out.push_back(values[s[k]]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WidthProfile width_profile(const MeshView& mesh, std::span<const double> values)
{
    WidthProfile prof;
    prof.breakpoints = used_values(mesh, values);
    const int B = static_cast<int>(prof.breakpoints.size());
    if (B < 2) return prof;
    prof.samples.assign(B - 1, {0.0, 0.0, 0.0});
    const auto& bp = prof.breakpoints;
    const int n = mesh.size();
    const int dim = mesh.dim;

    // interval span of every simplex, then per-simplex contributions in a flat
    // buffer so the reduction below runs in simplex order
    std::vector<int> first(n), offset(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        const auto& s = mesh.simplices[mesh.at(i)];
        double lo = values[s[0]], hi = lo;
        for (int k = 1; k <= dim; ++k) {
            lo = std::min(lo, values[s[k]]);
            hi = std::max(hi, values[s[k]]);
        }
        const int a = static_cast<int>(std::lower_bound(bp.begin(), bp.end(), lo) - bp.begin());
        const int b = static_cast<int>(std::lower_bound(bp.begin(), bp.end(), hi) - bp.begin());
        first[i] = a;
        offset[i + 1] = offset[i] + (b - a);
    }
    std::vector<std::array<double, 3>> contrib(offset[n]);
    parallel_for(n, [&](int i) {
        const int sid = mesh.at(i);
        const auto& s = mesh.simplices[sid];
        std::array<double, 4> v{};
        const std::span<const Point> pts(mesh.realizations[sid].data(), dim + 1);
        const std::span<const double> vals(v.data(), dim + 1);
        for (int j = 0; j < offset[i + 1] - offset[i]; ++j) {
            const int k = first[i] + j;
            const double lo = bp[k], hi = bp[k + 1];
            // relative to lo, so narrow intervals far from 0 keep their precision
            for (int q = 0; q <= dim; ++q) v[q] = values[s[q]] - lo;
            auto& out = contrib[offset[i] + j];
            for (int q = 0; q < 3; ++q) out[q] = slice_simplex(dim, pts, vals, 0.25 * (q + 1) * (hi - lo)).volume;
        }
    });
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < offset[i + 1] - offset[i]; ++j)
            for (int q = 0; q < 3; ++q) prof.samples[first[i] + j][q] += contrib[offset[i] + j][q];

    prof.width = -1.0;
    for (int k = 0; k < B - 1; ++k) {
        const auto [m, t] = prof.interval_max(k);
        if (m > prof.width) {
            prof.width = m;
            prof.argmax = t;
        }
    }
    prof.width = std::max(prof.width, 0.0);
    return prof;
}

double level_set_volume(const MeshView& mesh, std::span<const double> values, double t)
{
    double sum = 0.0;
    for (int i = 0; i < mesh.size(); ++i) {
        const int sid = mesh.at(i);
        const auto& s = mesh.simplices[sid];
        std::array<double, 4> v{};
        for (int k = 0; k <= mesh.dim; ++k) v[k] = values[s[k]];
        sum += slice_simplex(mesh.dim, {mesh.realizations[sid].data(), static_cast<std::size_t>(mesh.dim + 1)},
                             {v.data(), static_cast<std::size_t>(mesh.dim + 1)}, t)
                   .volume;
    }
    return sum;
}

double sublevel_set_volume(const MeshView& mesh, std::span<const double> values, double t)
{
    double sum = 0.0;
    for (int i = 0; i < mesh.size(); ++i) {
        const int sid = mesh.at(i);
        const auto& s = mesh.simplices[sid];
        std::array<double, 4> v{};
        for (int k = 0; k <= mesh.dim; ++k) v[k] = values[s[k]];
        sum += sublevel_volume(mesh.dim, {mesh.realizations[sid].data(), static_cast<std::size_t>(mesh.dim + 1)},
                               {v.data(), static_cast<std::size_t>(mesh.dim + 1)}, t);
    }
    return sum;
}

bool is_pl_morse(const MeshView& mesh, std::span<const double> values)
{
    std::vector<int> used;
    for (int i = 0; i < mesh.size(); ++i) {
        const auto& s = mesh.simplices[mesh.at(i)];
        for (int k = 0; k <= mesh.dim; ++k) used.push_back(s[k]);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<double> vals;
    vals.reserve(used.size());
    for (int v : used) {
        if (!std::isfinite(values[v])) return false;
        vals.push_back(values[v]);
    }
    std::sort(vals.begin(), vals.end());
    return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

RegularLevel regular_level(std::span<const double> sorted, double t)
{
    RegularLevel out{t, t, false};
    if (sorted.empty()) return out;
    const double range = sorted.back() - sorted.front();
    const double eps = 1e-12 * (range > 0.0 ? range : 1.0);
    auto regular = [&](double x) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), x - eps);
        return it == sorted.end() || *it > x + eps;
    };
    if (regular(t)) return out;

    // walk outward over the cluster of values near t in both directions
    auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
    double up = t, down = t;
    for (auto j = it; j != sorted.end() && *j <= up + eps; ++j) up = *j;
    up += 2.0 * eps;
    for (auto j = it; j != sorted.begin();) {
        --j;
        if (*j < down - eps) break;
        down = *j;
    }
    down -= 2.0 * eps;
    while (!regular(up)) up += eps;
    while (!regular(down)) down -= eps;
    out.t = (up - t <= t - down) ? up : down;
    out.nudged = true;
    return out;
}

Chain level_chain(const FlatComplex& K, std::span<const double> values, double t)
{
    std::vector<char> above(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) {
        double sum = 0.0;
        for (int v : K.simplex(s)) sum += values[v];
        above[s] = sum / (K.dim() + 1) > t;
    }
    return separating_faces(K, above);
}

bool level_set_closed(const FlatComplex& K, std::span<const double> values, double t)
{
    std::vector<int> hits(K.num_faces(), 0);
    for (int s = 0; s < K.num_simplices(); ++s)
        for (int i = 0; i <= K.dim(); ++i) {
            const int f = K.simplex_face(s, i);
            bool below = false, above = false;
            for (int v : K.face_vertices(f)) (values[v] < t ? below : above) = true;
            if (below && above) ++hits[f];
        }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h % 2 == 0; });
}

} // namespace sweepout
