#include "sweepout/refine.hpp"

#include "sweepout/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sweepout {

RefinementMesh::RefinementMesh(const FlatComplex& K)
    : dim_(K.dim()),
      num_vertices_(K.num_vertices()),
      simplices_(K.simplices()),
      realizations_(K.realizations()),
      live_(K.num_simplices(), 1),
      origin_(K.num_simplices()),
      star_(K.num_vertices())
{
    for (int s = 0; s < K.num_simplices(); ++s) {
        origin_[s] = s;
        for (int v : K.simplex(s)) star_[v].push_back(s);
    }
}

double RefinementMesh::simplex_volume(int s) const { return sweepout::simplex_volume(dim_, realization(s)); }

std::vector<int> RefinementMesh::live_simplices() const
{
    std::vector<int> out;
    for (int s = 0; s < num_slots(); ++s)
        if (live_[s]) out.push_back(s);
    return out;
}

std::vector<int> RefinementMesh::live_simplices(std::span<const char> origin_mask) const
{
    std::vector<int> out;
    for (int s = 0; s < num_slots(); ++s)
        if (live_[s] && origin_mask[origin_[s]]) out.push_back(s);
    return out;
}

MeshView RefinementMesh::view(std::span<const int> subset) const
{
    return MeshView{dim_, simplices_, realizations_, subset};
}

int RefinementMesh::split_edge(int p, int q, double t)
{
    if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::EpsilonTooLarge, "split fraction must lie in (0, 1)");
    std::vector<int> around;
    for (int s : star_[p]) {
        const auto sv = simplex(s);
        if (std::find(sv.begin(), sv.end(), q) != sv.end()) around.push_back(s);
    }
    if (around.empty())
        throw Error(ErrorCode::BadParams, "no edge between " + std::to_string(p) + " and " + std::to_string(q));
    std::sort(around.begin(), around.end());

    const int m = num_vertices_++;
    star_.emplace_back();
    for (int s : around) {
        const int ip = static_cast<int>(std::find(simplices_[s].begin(), simplices_[s].end(), p) - simplices_[s].begin());
        const int iq = static_cast<int>(std::find(simplices_[s].begin(), simplices_[s].end(), q) - simplices_[s].begin());
        const Point mid = lerp(realizations_[s][ip], realizations_[s][iq], t);
        live_[s] = 0;
        for (int v : simplex(s)) std::erase(star_[v], s);
        for (int replaced : {iq, ip}) {
            Simplex child = simplices_[s];
            auto pts = realizations_[s];
            child[replaced] = m;
            pts[replaced] = mid;
            const int id = num_slots();
            simplices_.push_back(child);
            realizations_.push_back(pts);
            live_.push_back(1);
            origin_.push_back(origin_[s]);
            for (int v : simplex(id)) star_[v].push_back(id);
        }
    }
    for (auto& [id, values] : stores_) {
        values.resize(num_vertices_, std::numeric_limits<double>::quiet_NaN());
        values[m] = (1.0 - t) * values[p] + t * values[q];
    }
    ++splits_;
    return m;
}

int RefinementMesh::add_store(std::vector<double> values)
{
    values.resize(num_vertices_, std::numeric_limits<double>::quiet_NaN());
    stores_[next_store_] = std::move(values);
    return next_store_++;
}

FlatComplex RefinementMesh::to_complex() const
{
    std::vector<Simplex> simplices;
    EdgeLengths lengths;
    for (int s = 0; s < num_slots(); ++s) {
        if (!live_[s]) continue;
        Simplex sorted = simplices_[s];
        std::sort(sorted.begin(), sorted.begin() + dim_ + 1);
        simplices.push_back(sorted);
        for (int i = 0; i <= dim_; ++i)
            for (int j = i + 1; j <= dim_; ++j)
                lengths.emplace(edge_key(simplices_[s][i], simplices_[s][j]),
                                distance(realizations_[s][i], realizations_[s][j]));
    }
    return FlatComplex::build(dim_, num_vertices_, std::move(simplices), lengths);
}

} // namespace sweepout
