#include "rieszgas/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rieszgas/errors.hpp"

namespace rieszgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-13;
} // namespace

double min_cost_transport(const std::vector<double>& supply,
                          const std::vector<double>& demand,
                          const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(supply.size());
    const int m = static_cast<int>(demand.size());
    if (n == 0 || m == 0) return 0.0;
    if (static_cast<int>(cost.size()) != n)
        throw usage_error("transport: cost matrix shape mismatch");
    double tot_s = 0.0, tot_d = 0.0;
    for (double s : supply) tot_s += s;
    for (double t : demand) tot_d += t;
    if (std::abs(tot_s - tot_d) > 1e-9 * std::max(1.0, tot_s))
        throw usage_error("transport: supplies and demands must balance");

    std::vector<double> sup = supply, dem = demand;
    std::vector<std::vector<double>> flow(n, std::vector<double>(m, 0.0));
    std::vector<double> pot_s(n, 0.0), pot_d(m, 0.0);

    // nodes: 0..n-1 sources, n..n+m-1 sinks
    const int V = n + m;
    std::vector<double> dist(V);
    std::vector<int> prev(V);
    std::vector<char> done(V);

    int guard = 0;
    while (true) {
        int src = -1;
        for (int i = 0; i < n; ++i)
            if (sup[i] > kEps * std::max(1.0, tot_s)) {
                src = i;
                break;
            }
        if (src < 0) break;
        if (++guard > 100 * V + 10000)
            throw numerical_error("transport: augmentation limit exceeded");

        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        dist[src] = 0.0;

        for (int iter = 0; iter < V; ++iter) {
            int u = -1;
            double best = kInf;
            for (int v = 0; v < V; ++v)
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            if (u < 0) break;
            done[u] = 1;
            if (u < n) {
                // source u -> any sink
                for (int j = 0; j < m; ++j) {
                    const double rc = cost[u][j] - pot_s[u] + pot_d[j];
                    if (dist[u] + rc < dist[n + j] - 1e-15) {
                        dist[n + j] = dist[u] + rc;
                        prev[n + j] = u;
                    }
                }
            } else {
                // sink -> source along positive flow
                const int j = u - n;
                for (int i = 0; i < n; ++i)
                    if (flow[i][j] > kEps) {
                        const double rc = -cost[i][j] + pot_s[i] - pot_d[j];
                        if (dist[u] + rc < dist[i] - 1e-15) {
                            dist[i] = dist[u] + rc;
                            prev[i] = u;
                        }
                    }
            }
        }

        // nearest sink with residual demand
        int sink = -1;
        double bestd = kInf;
        for (int j = 0; j < m; ++j)
            if (dem[j] > kEps * std::max(1.0, tot_s) && dist[n + j] < bestd) {
                bestd = dist[n + j];
                sink = j;
            }
        if (sink < 0)
            throw numerical_error("transport: no augmenting path (unbalanced instance?)");

        // bottleneck along the path
        double push = std::min(sup[src], dem[sink]);
        for (int v = n + sink; prev[v] != -1; v = prev[v])
            if (v < n) push = std::min(push, flow[v][prev[v] - n]);
        // apply
        for (int v = n + sink; prev[v] != -1; v = prev[v]) {
            if (v >= n)
                flow[prev[v]][v - n] += push;
            else
                flow[v][prev[v] - n] -= push;
        }
        sup[src] -= push;
        dem[sink] -= push;

        // potential update keeps reduced costs nonnegative
        for (int i = 0; i < n; ++i)
            if (dist[i] < kInf) pot_s[i] -= dist[i];
        for (int j = 0; j < m; ++j)
            if (dist[n + j] < kInf) pot_d[j] -= dist[n + j];
    }

    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) total += flow[i][j] * cost[i][j];
    return total;
}

double solve_assignment(const std::vector<std::vector<double>>& cost,
                        std::vector<int>& assignment) {
    const int n = static_cast<int>(cost.size());
    assignment.assign(n, -1);
    if (n == 0) return 0.0;
    // Hungarian algorithm, shortest augmenting path per row; rows and
    // columns are 1-based here, column 0 is the virtual root.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j)
                if (!used[j]) {
                    const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) {
            assignment[p[j] - 1] = j - 1;
            total += cost[p[j] - 1][j - 1];
        }
    return total;
}

} // namespace rieszgas
