#pragma once

#include <vector>

namespace sweepout {

/// Dinic max-flow on a small dense-ish graph with real capacities.
class MaxFlow {
public:
    explicit MaxFlow(int nodes);

    void add_arc(int from, int to, double capacity);
    /// Two opposite arcs of the same capacity.
    void add_edge(int a, int b, double capacity);

    double solve(int source, int sink);
    /// After solve: nodes reachable from the source in the residual graph.
    const std::vector<char>& source_side() const { return reach_; }

private:
    struct Arc {
        int to;
        int rev;
        double cap;
    };
    bool bfs(int s, int t);
    double dfs(int v, int t, double pushed);

    std::vector<std::vector<Arc>> g_;
    std::vector<int> level_, iter_;
    std::vector<char> reach_;
    double eps_ = 0.0;
};

} // namespace sweepout
