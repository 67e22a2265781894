#ifndef RIESZGAS_MEASURES_HPP
#define RIESZGAS_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "rieszgas/energy.hpp"
#include "rieszgas/equilibrium.hpp"
#include "rieszgas/model.hpp"

namespace rieszgas {

/// Uniform weights 1/N on the particle positions.
DiscreteMeasure empirical_measure(const Configuration& config);

/// I(mu) on a discrete measure with the off-diagonal convention:
/// sum_i w_i V(x_i) + (beta/2) sum_{i != j} w_i w_j k(x_i - x_j).
/// Coincides with total_energy on empirical measures.
double discrete_rate_I(const DiscreteMeasure& measure, const GasModel& model);

enum class FMMethod { exact_lp, truncated_transport };

struct FMOptions {
    FMMethod method = FMMethod::exact_lp;
    /// Measures with more atoms than this are subsampled (seed-controlled)
    /// before solving; the result is then an estimate.
    int max_atoms = 500;
    std::uint64_t subsample_seed = 0;
};

struct FMResult {
    double distance = 0.0;
    std::string method; // "exact-lp", "truncated-transport", with "-subsampled" suffix
    bool subsampled = false;
};

/// Fortet-Mourier (bounded-Lipschitz) distance between two discrete
/// measures. `exact_lp` solves the finite maximization over the function
/// values at the support points exactly (via its transshipment dual);
/// `truncated_transport` runs exact assignment with ground cost
/// min(|x-y|, 2) and requires equal atom counts with uniform weights.
FMResult fortet_mourier(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const FMOptions& opts = {});

/// Nondecreasing radial CDF with F(r0) = 0, F(R0) = 1.
class RadialCDF {
public:
    RadialCDF() = default;

    double operator()(double r) const;
    double support_min() const { return r0_; }
    double support_max() const { return R0_; }

    /// Inverse CDF by bisection (used for sampling reference measures).
    double quantile(double u) const;

    friend RadialCDF radial_cdf_of_density(const RadialDensity& density);

private:
    double r0_ = 0.0, R0_ = 1.0;
    std::vector<double> grid_, cum_;
    std::function<double(double)> piece_; // integrand M(t) sigma_d t^{d-1}
};

/// Cumulative radial mass function of a radial density.
RadialCDF radial_cdf_of_density(const RadialDensity& density);

/// Kolmogorov-Smirnov statistic of the particle radii against the CDF.
double radial_ks(const Configuration& config, const RadialCDF& cdf);

/// max_i |x_i|.
double max_radius(const Configuration& config);

} // namespace rieszgas

#endif
