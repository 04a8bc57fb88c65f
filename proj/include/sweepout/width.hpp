#pragma once

#include "sweepout/complex.hpp"

#include <span>
#include <vector>

namespace sweepout {

/// Realized simplices viewed without ownership. `subset` restricts the view
/// to the listed simplex indices; empty means all of them.
struct MeshView {
    int dim = 0;
    std::span<const Simplex> simplices;
    std::span<const std::array<Point, 4>> realizations;
    std::span<const int> subset;

    int size() const { return subset.empty() ? static_cast<int>(simplices.size()) : static_cast<int>(subset.size()); }
    int at(int i) const { return subset.empty() ? i : subset[i]; }
};

MeshView view_of(const FlatComplex& K, std::span<const int> subset = {});

/// Level-set volume profile of a PL function. On every open interval between
/// consecutive breakpoints the level volume is a polynomial of degree <= 2; it
/// is stored by its values at the local nodes 1/4, 1/2, 3/4.
struct WidthProfile {
    std::vector<double> breakpoints;
    std::vector<std::array<double, 3>> samples;
    double width = 0.0;
    double argmax = 0.0;

    int intervals() const { return static_cast<int>(samples.size()); }
    /// Polynomial of interval i evaluated at local coordinate u in [0, 1];
    /// u = 0 and u = 1 give the one-sided limits.
    double local(int i, double u) const;
    /// Level volume at t (0 outside the breakpoint range).
    double operator()(double t) const;
    /// Maximum of interval i and its location.
    std::pair<double, double> interval_max(int i) const;
};

WidthProfile width_profile(const MeshView& mesh, std::span<const double> values);

double level_set_volume(const MeshView& mesh, std::span<const double> values, double t);
double sublevel_set_volume(const MeshView& mesh, std::span<const double> values, double t);

/// Pairwise distinct values on every vertex used by the mesh.
bool is_pl_morse(const MeshView& mesh, std::span<const double> values);

struct RegularLevel {
    double t = 0.0;
    double requested = 0.0;
    bool nudged = false;
};

/// Moves t away from every vertex value by more than 1e-12 * range.
RegularLevel regular_level(std::span<const double> sorted_values, double t);

/// Snapped level chain: faces between simplices whose barycentric value is
/// above t and those below. Complex boundary faces are excluded.
Chain level_chain(const FlatComplex& K, std::span<const double> values, double t);

/// Combinatorial closedness of the PL slice at a regular value: every crossed
/// face is met by the slice from each of its cofaces.
bool level_set_closed(const FlatComplex& K, std::span<const double> values, double t);

/// Sorted distinct values over vertices used by the mesh.
std::vector<double> used_values(const MeshView& mesh, std::span<const double> values);

} // namespace sweepout
