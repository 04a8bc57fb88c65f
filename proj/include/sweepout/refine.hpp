#pragma once

#include "sweepout/complex.hpp"
#include "sweepout/width.hpp"

#include <map>
#include <span>
#include <vector>

namespace sweepout {

/// A FlatComplex refined by edge splits. Every simplex keeps its own flat
/// realization, so a split only interpolates points and stays exact. Value
/// stores registered with the mesh are interpolated at each new vertex, which
/// leaves the PL functions they describe unchanged.
class RefinementMesh {
public:
    RefinementMesh() = default;
    explicit RefinementMesh(const FlatComplex& K);

    int dim() const { return dim_; }
    int num_vertices() const { return num_vertices_; }
    int num_slots() const { return static_cast<int>(simplices_.size()); }
    bool live(int s) const { return live_[s]; }
    /// Simplex of the base complex this piece came from.
    int origin(int s) const { return origin_[s]; }
    std::span<const int> simplex(int s) const { return {simplices_[s].data(), static_cast<std::size_t>(dim_ + 1)}; }
    std::span<const Point> realization(int s) const { return {realizations_[s].data(), static_cast<std::size_t>(dim_ + 1)}; }
    double simplex_volume(int s) const;
    const std::vector<int>& vertex_star(int v) const { return star_[v]; }

    std::vector<int> live_simplices() const;
    /// Live simplices whose origin is marked in `origin_mask`.
    std::vector<int> live_simplices(std::span<const char> origin_mask) const;
    MeshView view(std::span<const int> subset) const;

    /// Splits edge pq at the point at fraction `t` from p; returns the new vertex.
    int split_edge(int p, int q, double t);
    int splits() const { return splits_; }

    int add_store(std::vector<double> values);
    std::vector<double>& store(int id) { return stores_.at(id); }
    const std::vector<double>& store(int id) const { return stores_.at(id); }
    void drop_store(int id) { stores_.erase(id); }

    /// Live simplices as a standalone complex; vertex ids are kept.
    FlatComplex to_complex() const;

private:
    int dim_ = 0;
    int num_vertices_ = 0;
    int splits_ = 0;
    int next_store_ = 0;
    std::vector<Simplex> simplices_;
    std::vector<std::array<Point, 4>> realizations_;
    std::vector<char> live_;
    std::vector<int> origin_;
    std::vector<std::vector<int>> star_;
    std::map<int, std::vector<double>> stores_;
};

} // namespace sweepout
