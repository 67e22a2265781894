#ifndef RIESZGAS_QUADRATURE_HPP
#define RIESZGAS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace rieszgas {

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f on [a,b].
/// Subdivides until the local error estimate is below
/// max(abs_tol, rel_tol*|I|) summed over panels.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-12,
                     int max_depth = 60);

/// Same, with the interval pre-split at the given interior break points
/// (integrand kinks, support edges).
QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks,
                           double abs_tol = 1e-12, double rel_tol = 1e-12);

} // namespace rieszgas

#endif
