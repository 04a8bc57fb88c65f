#include "sweepout/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sweepout {

MaxFlow::MaxFlow(int nodes) : g_(nodes) {}

void MaxFlow::add_arc(int from, int to, double capacity)
{
    g_[from].push_back({to, static_cast<int>(g_[to].size()), capacity});
    g_[to].push_back({from, static_cast<int>(g_[from].size()) - 1, 0.0});
}

void MaxFlow::add_edge(int a, int b, double capacity)
{
    g_[a].push_back({b, static_cast<int>(g_[b].size()), capacity});
    g_[b].push_back({a, static_cast<int>(g_[a].size()) - 1, capacity});
}

bool MaxFlow::bfs(int s, int t)
{
    level_.assign(g_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const auto& a : g_[v])
            if (a.cap > eps_ && level_[a.to] < 0) {
                level_[a.to] = level_[v] + 1;
                q.push(a.to);
            }
    }
    return level_[t] >= 0;
}

double MaxFlow::dfs(int v, int t, double pushed)
{
    if (v == t) return pushed;
    for (int& i = iter_[v]; i < static_cast<int>(g_[v].size()); ++i) {
        Arc& a = g_[v][i];
        if (a.cap <= eps_ || level_[a.to] != level_[v] + 1) continue;
        const double d = dfs(a.to, t, std::min(pushed, a.cap));
        if (d > 0.0) {
            a.cap -= d;
            g_[a.to][a.rev].cap += d;
            return d;
        }
    }
    return 0.0;
}

double MaxFlow::solve(int source, int sink)
{
    // residuals within rounding of the largest capacity count as saturated
    double cmax = 0.0;
    for (const auto& row : g_)
        for (const auto& a : row) cmax = std::max(cmax, a.cap);
    eps_ = 1e-13 * cmax;
    double flow = 0.0;
    while (bfs(source, sink)) {
        iter_.assign(g_.size(), 0);
        while (true) {
            const double f = dfs(source, sink, std::numeric_limits<double>::infinity());
            if (f <= 0.0) break;
            flow += f;
        }
    }
    reach_.assign(g_.size(), 0);
    std::queue<int> q;
    reach_[source] = 1;
    q.push(source);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const auto& a : g_[v])
            if (a.cap > eps_ && !reach_[a.to]) {
                reach_[a.to] = 1;
                q.push(a.to);
            }
    }
    return flow;
}

} // namespace sweepout
