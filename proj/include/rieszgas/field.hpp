#ifndef RIESZGAS_FIELD_HPP
#define RIESZGAS_FIELD_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rieszgas/errors.hpp"

namespace rieszgas {

/// External confinement field V acting on each particle. Radial variants
/// carry the profile v with V(x) = v(|x|) together with its derivative,
/// which is what the equilibrium machinery consumes.
class ExternalField {
public:
    using RadialFn = std::function<double(double)>;
    using ValueFn = std::function<double(std::span<const double>)>;
    using GradFn = std::function<void(std::span<const double>, std::span<double>)>;

    ExternalField() = default;

    /// v(r) = r^2
    static ExternalField quadratic(int d);
    /// v(r) = r^p, p > 0
    static ExternalField power(int d, double p);
    /// General radial profile; ddv may be omitted (finite differences are
    /// then used where a second derivative is needed).
    static ExternalField radial_profile(int d, RadialFn v, RadialFn dv,
                                        RadialFn ddv = nullptr,
                                        std::string name = "radial");
    /// Piecewise-linear V(r) from a table; out-of-range queries are
    /// extrapolated with the boundary slope.
    static ExternalField tabulated_radial(int d, std::vector<double> r,
                                          std::vector<double> V);
    /// Arbitrary V with supplied gradient.
    static ExternalField custom(int d, ValueFn V, GradFn grad);

    int dimension() const { return d_; }
    bool is_radial() const { return radial_; }
    const std::string& name() const { return name_; }

    double value(std::span<const double> x) const;
    void gradient(std::span<const double> x, std::span<double> out) const;

    /// Radial profile access (radial fields only).
    double v(double r) const;
    double dv(double r) const;
    bool has_ddv() const { return static_cast<bool>(ddv_); }
    double ddv(double r) const;

    /// w(r) = r^{d-1} v'(r), the quantity driving the radial Coulomb
    /// equilibrium.
    double w(double r) const;

    /// True once a tabulated field has been queried outside its grid.
    bool extrapolated() const { return *extrapolated_; }

private:
    int d_ = 0;
    bool radial_ = false;
    std::string name_;
    RadialFn v_, dv_, ddv_;
    ValueFn value_;
    GradFn grad_;
    std::shared_ptr<bool> extrapolated_ = std::make_shared<bool>(false);

    void check_dim(std::span<const double> x) const;
};

} // namespace rieszgas

#endif
