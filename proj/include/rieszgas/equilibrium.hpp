#ifndef RIESZGAS_EQUILIBRIUM_HPP
#define RIESZGAS_EQUILIBRIUM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rieszgas/field.hpp"
#include "rieszgas/model.hpp"

namespace rieszgas {

/// Surface area of the unit sphere in R^d.
double sphere_surface(int d);

/// Radial measure d mu = M(r) d sigma_r dr supported on the ring
/// r0 <= |x| <= R0 in R^d.
struct RadialDensity {
    int d = 3;
    double r0 = 0.0;
    double R0 = 1.0;
    std::function<double(double)> M;

    /// Total mass sigma_d * int_{r0}^{R0} M(t) t^{d-1} dt.
    double mass(double tol = 1e-12) const;

    static RadialDensity uniform_ball(int d, double radius);
};

struct EquilibriumResult {
    RadialDensity density;
    double robin_constant = 0.0;       // C* = beta/R0^{d-2} + v(R0)
    std::optional<double> ball_radius; // set when the measure is uniform on a ball
    double beta = 1.0;
};

/// Closed-form equilibrium measure of the Coulomb gas with radial field
/// V(x) = v(|x|) in dimension d >= 3 and coupling beta: supported on the
/// ring [r0, R0] with R0 solving w(R0) = beta(d-2), w(r) = r^{d-1} v'(r),
/// and density M(r) = w'(r) / (beta (d-2) sigma_d r^{d-1}).
EquilibriumResult solve_radial_coulomb(int d, const ExternalField& field, double beta);

/// Radius (beta(d-2)/2)^{1/d} of the uniform-ball equilibrium for the
/// quadratic field.
double uniform_ball_radius(int d, double beta);

/// Coulomb (alpha = 2) potential of a radial density at radius r, by
/// Gauss averaging: sigma_d/r^{d-2} * int_{r0}^{min(r,R0)} M t^{d-1} dt
/// + sigma_d * int_{max(r,r0)}^{R0} M t dt.
double radial_coulomb_potential(const RadialDensity& density, double r);

/// d/dr of the above.
double radial_coulomb_potential_derivative(const RadialDensity& density, double r);

/// Potential of the uniform unit-mass measure on the sphere of radius
/// r_sphere, evaluated at radius x_radius (Gauss averaging principle).
double sphere_potential(double r_sphere, double x_radius, int d);

/// Weighted atoms; shared with the measures module.
struct DiscreteMeasure {
    int d = 0;
    std::vector<double> points;  // row-major
    std::vector<double> weights; // nonnegative, sums to 1

    int size() const { return static_cast<int>(weights.size()); }
    std::span<const double> point(int i) const {
        return {points.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }
    void validate() const;
};

struct PotentialEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Riesz potential U_alpha^mu(x) of a discrete measure (exact summation).
PotentialEstimate riesz_potential_estimate(const DiscreteMeasure& source, double alpha,
                                           std::span<const double> x);

/// Riesz potential of a radial density: radial quadrature when alpha = 2,
/// stratified-radius Monte Carlo with reported standard error otherwise.
PotentialEstimate riesz_potential_estimate(const RadialDensity& source, double alpha,
                                           std::span<const double> x,
                                           std::int64_t budget = 100000,
                                           std::uint64_t seed = 0);

/// C* = int (U + V) d mu under the model's coupling (U is beta times the
/// unit-coupling Coulomb potential).
double robin_constant(const RadialDensity& density, const GasModel& model);

struct ResidualReport {
    double on_support_max_dev = 0.0;
    double off_support_min_excess = 0.0;
    double fitted_C = 0.0;
};

/// Euler-Lagrange residuals of a radial candidate measure against an
/// alpha = 2 model on the given radii grid.
ResidualReport euler_lagrange_residual(const RadialDensity& candidate,
                                       const GasModel& model,
                                       const std::vector<double>& grid);

/// Confinement field V(x) = -U_alpha^mu(x) + [|x|^2 - R]_+ whose
/// equilibrium measure is the prescribed target (supp(target) must lie in
/// B(0, R)).
ExternalField prescribed_field(const RadialDensity& target, double alpha, int d,
                               double R, std::int64_t mc_budget = 200000,
                               std::uint64_t seed = 0);

} // namespace rieszgas

#endif
