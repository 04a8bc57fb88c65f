#pragma once

#include "sweepout/cells.hpp"
#include "sweepout/complex.hpp"
#include "sweepout/refine.hpp"
#include "sweepout/splitter.hpp"
#include "sweepout/width.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sweepout {

/// Pairwise distinct values on `vertices`: ties and inversions in (value,
/// index) order are pushed up by 1e-13 of the range.
void make_distinct(std::vector<double>& values, std::span<const int> vertices);

struct CellSweep {
    std::vector<double> values; // per vertex, NaN off the cell
    double volume = 0.0;
    double width = 0.0;
    double budget = 0.0; // 6^{n-1} omega_{n-1} omega_n^{-(n-1)/n} lambda^{2(n-1)} vol^{(n-1)/n} (1 + tau)
    bool unrolled = false; // linear height, else graph distance
    double discrepancy = 0.0; // unrolling mismatch relative to the diameter
    Point direction{};
};

/// Height along the widest direction of the unrolled cell, or graph distance
/// from a peripheral vertex when the cell does not unroll; divided by `scale`.
/// Throws SingleCellBudgetExceeded.
CellSweep sweep_single_cell(const FlatComplex& K, std::span<const int> cell_simplices, double lambda, double scale = 1.0);

struct MergeStats {
    double epsilon = 0.0;
    double width = 0.0, width1 = 0.0, width2 = 0.0;
    double s_volume = 0.0;
    double eta = 0.0; // largest one-sided collar level over vol(S)
    double delta = 0.0; // largest single-simplex width among small collar simplices
    int n_small = 0;
    int splits = 0;
    int interface_vertices = 0;
    double bound = 0.0; // max(W1, W2) + 2n vol(S) eta + n^2 N_s delta
    double budget = 0.0; // max(W1, W2) + 2n vol(S)
    bool bound_ok = false, budget_ok = false;
};

/// Merges store f1 (on D1) and f2 (on D2) of M into store `out`. `side` is
/// per base simplex: 1 for D1, 2 for D2, 0 outside. Splits every edge from an
/// interface vertex to a non-interface vertex of D at fraction epsilon.
MergeStats merge_stores(RefinementMesh& M, const FlatComplex& base, int f1, int f2, int out, std::span<const char> side,
                        double epsilon);

struct MergeResult {
    RefinementMesh mesh;
    std::vector<double> values;
    MergeStats stats;
};

MergeResult merge(const FlatComplex& K, std::span<const double> f1, std::span<const double> f2, std::span<const char> side,
                  double epsilon);

struct TraceNode {
    std::string kind; // "cell" or "merge"
    std::vector<int> cells;
    double volume = 0.0;
    double width = 0.0;
    double ratio = 0.0; // width / volume^{(n-1)/n}
    int left = -1, right = -1;
    // cell
    double cell_budget = 0.0;
    bool unrolled = false;
    // merge
    MergeStats merge;
    int retries = 0;
    bool fallback = false;
    std::optional<Capacitor> capacitor;
    std::optional<RampSplit> ramp;
    std::string ramp_failure;
    std::vector<SplitCertificate> split_certificates;
    std::vector<CellCase> cases;
    std::vector<std::string> log;
    bool pass = true;
};

struct SweepConfig {
    std::optional<double> rho;
    double epsilon = 0.05;
    int n_target = 64;
    CellOptions cells{4.0, {100000, true}};
    SkeletonizeOptions split;
    int max_halvings = 4;
};

struct SweepCertificate {
    int dim = 0;
    double width = 0.0;
    double volume = 0.0;
    double C_n = 0.0;
    double bound = 0.0; // C_n vol^{(n-1)/n}
    double slack = 0.0;
    double epsilon = 0.0; // requested
    double min_epsilon = 0.0; // smallest used after halving
    double rho = 0.0;
    double lambda = 0.0;
    int cells = 0;
    double max_eta = 0.0;
    double max_factor = 0.0; // largest (W - max(W1, W2)) / vol(S) over merges
    bool pl_morse = false;
    bool pass = false;
    std::vector<std::string> failures;
    std::vector<TraceNode> trace;
    int root = -1;
    std::vector<std::string> log;
};

struct SweepResult {
    FlatComplex refined;
    std::vector<double> values; // per refined vertex
    CellStructure cells;
    WidthProfile profile;
    SweepCertificate cert;
};

/// Cell decomposition, recursive splitting, single-cell sweeps and merges.
/// Throws GlobalBudgetExceeded if the final width breaks C_n vol^{(n-1)/n}.
SweepResult sweep(const FlatComplex& K, const SweepConfig& cfg = {});

struct Bisection {
    double t = 0.0;
    double volume = 0.0;
    double volume_below = 0.0;
    double level_volume = 0.0; // PL level set at t
    Chain chain; // snapped level chain
    double chain_volume = 0.0;
    int components_below = 0, components_above = 0;
};

/// Level t with vol(f <= t) = vol / 2 up to 1e-9 vol.
Bisection bisect_equal_volume(const FlatComplex& K, std::span<const double> values);

} // namespace sweepout
