#pragma once

#include "sweepout/cells.hpp"
#include "sweepout/complex.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sweepout {

struct Capacitor {
    std::vector<int> region; // sorted simplex ids
    std::vector<int> A1, A2; // sorted simplex ids
    std::vector<int> ball_centers;
    double r = 0.0;
    double h = 0.0; // longest edge of the region
    double region_volume = 0.0;
    double volume1 = 0.0, volume2 = 0.0;
    double fraction1 = 0.0, fraction2 = 0.0;
    double lambda_n = 0.0;
    /// Smallest graph distance between a barycenter of A1 and one of A2.
    double separation = 0.0;
    std::vector<double> greedy_coverage; // covered volume after each center
    bool shortfall = false;
    std::string shortfall_reason;
};

/// Greedy vertex-centered r-balls until lambda_n of the region is covered;
/// A2 is the region minus every simplex with a vertex closer than 2r to a center.
/// Sets `shortfall` instead of throwing.
Capacitor try_build_capacitor(const FlatComplex& K, std::span<const int> region);
/// Same, throwing CapacitorShortfall or EmptyRegion.
Capacitor build_capacitor(const FlatComplex& K, std::span<const int> region);

struct RampSplit {
    double r = 0.0;
    double t = 0.0; // chosen regular level
    int levels = 0; // grid size actually used (64 or 256)
    bool densified = false;
    std::vector<double> grid; // levels after nudging
    std::vector<double> level_volumes; // PL level-set volumes on the grid
    std::vector<double> snapped_volumes; // snapped chain volumes on the grid
    double coarea_average = 0.0;
    double coarea_bound = 0.0; // vol / r * (1 + tau)
    Chain chain; // snapped chain at t
    double chain_volume = 0.0;
    double budget = 0.0; // A_n vol^{(n-1)/n} (1 + tau)
    std::vector<int> side1, side2; // side1 holds A1
    std::vector<double> ramp; // per vertex; NaN off the region
};

/// Distance ramp 1 - d(x, A1)/r clamped to [0, 1], cheapest snapped level on
/// a regular grid. Throws CoareaBudgetExceeded after one 4x densification.
RampSplit ramp_split(const FlatComplex& K, const Capacitor& cap);

struct CellCase {
    int cell = 0;
    std::string kind; // "project" or "boundary-minimal"
    double piece_volume = 0.0;
    double replaced_volume = 0.0; // projected or minimal chain, -1 if unavailable
    double budget = 0.0; // 36^{n-1} lambda^{2(n-1)} piece volume for projections
    double transferred_volume = 0.0; // cell volume whose provisional label flipped
    std::string note;
};

struct SplitCertificate {
    std::string name;
    double achieved = 0.0;
    double required = 0.0;
    bool upper = true; // achieved <= required, else achieved >= required
    bool pass = false;
};

struct SplitResult {
    std::vector<int> cells1, cells2; // cell indices
    std::vector<int> D1, D2; // sorted simplex ids
    Chain S;
    double volume = 0.0;
    double volume1 = 0.0, volume2 = 0.0;
    double chain_volume = 0.0;
    bool fallback = false; // one cell vs the rest
    bool refined = false; // min-cut refinement accepted
    std::vector<CellCase> cases;
    std::vector<SplitCertificate> certificates;
    std::vector<std::string> log;
};

struct SkeletonizeOptions {
    /// Cell-count threshold; nullopt uses N_0 from the constant table.
    std::optional<double> n0_override;
    bool mincut_refine = true;
};

/// Rounds a provisional two-sided labelling of the region (1 = side of A1)
/// to whole cells and certifies the result. `region_cells` lists the cells
/// forming the region; `A1`/`A2` mark terminal simplices (may be empty).
SplitResult skeletonize(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells,
                        const Chain& raw_chain, std::span<const char> provisional, std::span<const int> A1,
                        std::span<const int> A2, const SkeletonizeOptions& opt = {});

/// One cell against the rest of the region: the cell with the least
/// interface volume, ties to the lowest index.
SplitResult split_off_cell(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells);

/// Full split of a region made of whole cells: capacitor, ramp, then
/// skeletonize. Capacitor or ramp failures fall back to split_off_cell.
struct RegionSplit {
    std::optional<Capacitor> capacitor;
    std::optional<RampSplit> ramp;
    std::string ramp_failure;
    SplitResult result;
};
RegionSplit split_region(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells,
                         const SkeletonizeOptions& opt = {});

} // namespace sweepout
