#include "sweepout/distance.hpp"

#include "sweepout/error.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace sweepout {

WeightedGraph skeleton_graph(const FlatComplex& K, bool midpoint_refinement)
{
    const int nv = K.num_vertices();
    std::vector<std::vector<std::pair<int, double>>> adj;
    if (!midpoint_refinement) {
        WeightedGraph g;
        g.offsets.assign(nv + 1, 0);
        for (int v = 0; v < nv; ++v) {
            const auto nb = K.neighbors(v);
            g.offsets[v + 1] = g.offsets[v] + static_cast<int>(nb.size());
            for (const auto& n : nb) {
                g.targets.push_back(n.vertex);
                g.weights.push_back(n.length);
            }
        }
        return g;
    }

    // node ids: vertices first, then one midpoint per edge
    const int total = nv + K.num_edges();
    adj.resize(total);
    const int dim = K.dim();
    for (int s = 0; s < K.num_simplices(); ++s) {
        const auto sv = K.simplex(s);
        const auto p = K.realization(s);
        std::vector<std::pair<int, Point>> nodes;
        for (int i = 0; i <= dim; ++i) nodes.push_back({sv[i], p[i]});
        for (int i = 0; i <= dim; ++i)
            for (int j = i + 1; j <= dim; ++j) nodes.push_back({nv + K.edge(sv[i], sv[j]), lerp(p[i], p[j], 0.5)});
        for (std::size_t a = 0; a < nodes.size(); ++a)
            for (std::size_t b = a + 1; b < nodes.size(); ++b) {
                const double w = distance(nodes[a].second, nodes[b].second);
                adj[nodes[a].first].push_back({nodes[b].first, w});
                adj[nodes[b].first].push_back({nodes[a].first, w});
            }
    }
    WeightedGraph g;
    g.offsets.assign(total + 1, 0);
    for (int v = 0; v < total; ++v) {
        auto& row = adj[v];
        // an edge shared by several simplices yields duplicate arcs with equal weights
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end(),
                              [](const auto& a, const auto& b) { return a.first == b.first; }),
                  row.end());
        g.offsets[v + 1] = g.offsets[v] + static_cast<int>(row.size());
        for (const auto& [t, w] : row) {
            g.targets.push_back(t);
            g.weights.push_back(w);
        }
    }
    return g;
}

DistanceField dijkstra(const WeightedGraph& g, std::span<const Seed> seeds, double cutoff)
{
    const int n = g.size();
    DistanceField out;
    out.dist.assign(n, kInfinity);
    out.nearest.assign(n, -1);
    using Entry = std::tuple<double, int, int>; // dist, seed index, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (int i = 0; i < static_cast<int>(seeds.size()); ++i) {
        const auto [v, d] = seeds[i];
        if (d < out.dist[v] || (d == out.dist[v] && out.nearest[v] < 0)) {
            out.dist[v] = d;
            out.nearest[v] = i;
            heap.push({d, i, v});
        }
    }
    while (!heap.empty()) {
        const auto [d, src, v] = heap.top();
        heap.pop();
        if (d != out.dist[v] || src != out.nearest[v]) continue;
        for (int k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
            const int w = g.targets[k];
            const double nd = d + g.weights[k];
            if (nd > cutoff) continue;
            if (nd < out.dist[w] || (nd == out.dist[w] && src < out.nearest[w])) {
                out.dist[w] = nd;
                out.nearest[w] = src;
                heap.push({nd, src, w});
            }
        }
    }
    return out;
}

DistanceField dijkstra(const WeightedGraph& g, std::span<const int> sources, double cutoff)
{
    std::vector<Seed> seeds;
    seeds.reserve(sources.size());
    for (int v : sources) seeds.push_back({v, 0.0});
    return dijkstra(g, std::span<const Seed>(seeds), cutoff);
}

WeightedGraph region_graph(const FlatComplex& K, std::span<const int> simplices)
{
    std::vector<int> edges;
    for (int s : simplices) {
        const auto sv = K.simplex(s);
        for (std::size_t i = 0; i < sv.size(); ++i)
            for (std::size_t j = i + 1; j < sv.size(); ++j) edges.push_back(K.edge(sv[i], sv[j]));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const int nv = K.num_vertices();
    std::vector<int> degree(nv, 0);
    for (int e : edges) {
        const auto ev = K.edge_vertices(e);
        ++degree[ev[0]];
        ++degree[ev[1]];
    }
    WeightedGraph g;
    g.offsets.assign(nv + 1, 0);
    for (int v = 0; v < nv; ++v) g.offsets[v + 1] = g.offsets[v] + degree[v];
    g.targets.resize(g.offsets[nv]);
    g.weights.resize(g.offsets[nv]);
    std::vector<int> fill(g.offsets.begin(), g.offsets.end() - 1);
    for (int e : edges) {
        const auto [u, v] = K.edge_vertices(e);
        g.targets[fill[u]] = v;
        g.weights[fill[u]++] = K.edge_length(e);
        g.targets[fill[v]] = u;
        g.weights[fill[v]++] = K.edge_length(e);
    }
    return g;
}

DistanceField geodesic_distance(const FlatComplex& K, std::span<const int> sources, const DistanceOptions& opt)
{
    if (sources.empty()) throw Error(ErrorCode::BadParams, "empty source set");
    for (int v : sources)
        if (v < 0 || v >= K.num_vertices()) throw Error(ErrorCode::BadParams, "source vertex out of range");

    auto field = dijkstra(skeleton_graph(K, opt.midpoint_refinement), sources, opt.cutoff);
    field.dist.resize(K.num_vertices());
    field.nearest.resize(K.num_vertices());

    if (opt.cutoff == kInfinity) {
        for (int v = 0; v < K.num_vertices(); ++v)
            if (field.nearest[v] < 0) {
                field.disconnected = true;
                if (opt.throw_if_disconnected)
                    throw Error(ErrorCode::DisconnectedComplex, "vertex " + std::to_string(v) + " is unreachable");
            }
    }
    return field;
}

} // namespace sweepout
