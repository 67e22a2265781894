#ifndef RIESZGAS_KERNEL_HPP
#define RIESZGAS_KERNEL_HPP

#include <span>

#include "rieszgas/errors.hpp"

namespace rieszgas {

/// Pair interaction kernel: Riesz |x|^{-(d-alpha)} with 0 < alpha < d, or
/// the Coulomb fundamental-solution kernel (-|x| in d=1, log(1/|x|) in d=2,
/// |x|^{-(d-2)} for d >= 3). For d >= 3 Coulomb coincides with Riesz at
/// alpha = 2.
struct KernelSpec {
    enum class Family { riesz, coulomb };

    Family family = Family::coulomb;
    int d = 3;
    double alpha = 2.0; // meaningful for riesz (and coulomb d >= 3 where it is 2)

    static KernelSpec riesz(int d, double alpha);
    static KernelSpec coulomb(int d);

    /// Constant of the fundamental solution: c for Coulomb, c_alpha for
    /// Riesz. Stored for reference and tests only.
    double fundamental_constant() const;

    /// Exponent s = d - alpha of the power-law branch (d >= 3 Coulomb /
    /// any Riesz).
    double exponent() const { return static_cast<double>(d) - alpha; }

    bool power_law() const {
        return family == Family::riesz || d >= 3;
    }
};

/// k(x - y); +infinity on the diagonal for singular variants.
double eval_kernel(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// grad_x k(x - y); throws singularity_error when x == y.
void eval_kernel_gradient(const KernelSpec& spec, std::span<const double> x,
                          std::span<const double> y, std::span<double> out);

/// Kernel value as a function of the pair distance r > 0.
double kernel_of_distance(const KernelSpec& spec, double r);

} // namespace rieszgas

#endif
