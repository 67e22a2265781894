#ifndef RIESZGAS_TRANSPORT_HPP
#define RIESZGAS_TRANSPORT_HPP

#include <vector>

namespace rieszgas {

/// Exact minimum-cost transportation between supplies and demands with a
/// dense cost matrix (successive shortest augmenting paths with node
/// potentials). Supplies and demands are nonnegative and must balance.
/// Returns the optimal total cost.
double min_cost_transport(const std::vector<double>& supply,
                          const std::vector<double>& demand,
                          const std::vector<std::vector<double>>& cost);

/// Exact assignment problem on a square cost matrix (Jonker-Volgenant
/// style O(n^3) auction-free shortest path variant). Returns the minimal
/// total cost; `assignment[i]` receives the column matched to row i.
double solve_assignment(const std::vector<std::vector<double>>& cost,
                        std::vector<int>& assignment);

} // namespace rieszgas

#endif
