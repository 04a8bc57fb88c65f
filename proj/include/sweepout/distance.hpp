#pragma once

#include "sweepout/complex.hpp"

#include <limits>
#include <span>
#include <vector>

namespace sweepout {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DistanceOptions {
    /// Adds one Steiner point per edge midpoint, joined inside each simplex.
    bool midpoint_refinement = false;
    /// Stop expanding beyond this distance; unreached vertices stay at +inf.
    double cutoff = kInfinity;
    /// Throw DisconnectedComplex instead of just flagging it.
    bool throw_if_disconnected = false;
};

struct DistanceField {
    std::vector<double> dist;
    /// Index into the source list of the nearest source, ties to the lower
    /// index; -1 when unreached.
    std::vector<int> nearest;
    bool disconnected = false;
};

/// Multi-source shortest paths on the 1-skeleton.
DistanceField geodesic_distance(const FlatComplex& K, std::span<const int> sources, const DistanceOptions& opt = {});

/// Dijkstra over an explicit weighted graph in CSR form; shared with the
/// refined-mesh code paths.
struct WeightedGraph {
    std::vector<int> offsets;
    std::vector<int> targets;
    std::vector<double> weights;
    int size() const { return static_cast<int>(offsets.size()) - 1; }
};

WeightedGraph skeleton_graph(const FlatComplex& K, bool midpoint_refinement);
/// 1-skeleton of the listed simplices only, over the full vertex id range.
WeightedGraph region_graph(const FlatComplex& K, std::span<const int> simplices);

DistanceField dijkstra(const WeightedGraph& g, std::span<const int> sources, double cutoff = kInfinity);

struct Seed {
    int node;
    double offset;
};
/// Multi-source variant where every source starts at its own offset; nearest
/// indexes the seed list.
DistanceField dijkstra(const WeightedGraph& g, std::span<const Seed> seeds, double cutoff = kInfinity);

} // namespace sweepout
