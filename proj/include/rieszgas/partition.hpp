#ifndef RIESZGAS_PARTITION_HPP
#define RIESZGAS_PARTITION_HPP

#include <functional>
#include <span>
#include <vector>

#include "rieszgas/errors.hpp"

namespace rieszgas {

/// Axis-aligned box, per-axis intervals [lo_k, hi_k].
struct Box {
    std::vector<double> lo, hi;

    Box() = default;
    Box(std::vector<double> l, std::vector<double> h);

    int dimension() const { return static_cast<int>(lo.size()); }
    double min_edge() const;
    double max_edge() const;
    bool contains(std::span<const double> x) const;
};

using DensityFn = std::function<double(std::span<const double>)>;

/// Mass of the density over the box (iterated adaptive quadrature).
double box_mass(const Box& box, const DensityFn& density, double tol = 1e-11);

/// Partition of `box` into n sub-boxes of equal density mass, built by the
/// recursive quantile construction: along the first axis the box is cut
/// into b = floor(n^{1/d}) slabs carrying masses n_i/n (n_i from the
/// base-b digit decomposition of n), and each slab is partitioned
/// recursively in the remaining dimensions. Edge lengths stay within a
/// constant factor of n^{-1/d} times the parent's edges when the density
/// is bounded above and below.
std::vector<Box> nice_partition(const Box& box, const DensityFn& density, int n);

} // namespace rieszgas

#endif
