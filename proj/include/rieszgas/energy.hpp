#ifndef RIESZGAS_ENERGY_HPP
#define RIESZGAS_ENERGY_HPP

#include <span>
#include <vector>

#include "rieszgas/model.hpp"

namespace rieszgas {

/// Pair-sum evaluation mode. `deterministic` accumulates terms in sorted
/// order, which makes the value independent of particle labelling down to
/// the last bit; `fast` is a plain (optionally parallel) reduction.
enum class SumMode { deterministic, fast };

/// H_N = (1/N) sum_i V(x_i) + (beta/N^2) sum_{i<j} k(x_i - x_j).
/// +infinity when two particles coincide (singular kernels).
double total_energy(const Configuration& config, const GasModel& model,
                    SumMode mode = SumMode::deterministic);

/// Row i is (1/N) grad V(x_i) + (beta/N^2) sum_{j!=i} grad_x k(x_i - x_j),
/// written into `out` (size N*d). Throws singularity_error on coincident
/// particles.
void energy_gradient(const Configuration& config, const GasModel& model,
                     std::span<double> out);

/// Fused energy + gradient in one pair sweep (fast mode). Returns H_N; the
/// gradient is only meaningful when the energy is finite.
double energy_and_gradient(const Configuration& config, const GasModel& model,
                           std::span<double> grad_out);

/// O(N) energy difference for moving particle i to `newpos`.
double energy_delta(const Configuration& config, const GasModel& model, int i,
                    std::span<const double> newpos);

} // namespace rieszgas

#endif
