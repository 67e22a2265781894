#include "rieszgas/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rieszgas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const KernelSpec& spec, std::span<const double> x,
                std::span<const double> y) {
    if (static_cast<int>(x.size()) != spec.d || static_cast<int>(y.size()) != spec.d)
        throw usage_error("kernel: point dimension does not match spec");
}

double dist(std::span<const double> x, std::span<const double> y) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = x[k] - y[k];
        r2 += t * t;
    }
    return std::sqrt(r2);
}

// r^{-s} avoiding pow() for the common integer exponents
double inv_pow(double r, double s) {
    if (s == 1.0) return 1.0 / r;
    if (s == 2.0) return 1.0 / (r * r);
    if (s == 3.0) return 1.0 / (r * r * r);
    return std::pow(r, -s);
}

} // namespace

KernelSpec KernelSpec::riesz(int d, double alpha) {
    if (d < 1) throw usage_error("riesz kernel: d must be >= 1");
    if (!(alpha > 0.0 && alpha < static_cast<double>(d)))
        throw usage_error("riesz kernel: alpha must lie in (0, d)");
    return KernelSpec{Family::riesz, d, alpha};
}

KernelSpec KernelSpec::coulomb(int d) {
    if (d < 1) throw usage_error("coulomb kernel: d must be >= 1");
    return KernelSpec{Family::coulomb, d, 2.0};
}

double KernelSpec::fundamental_constant() const {
    using std::numbers::pi;
    if (family == Family::coulomb) {
        if (d == 1) return 0.5;
        if (d == 2) return 1.0 / (2.0 * pi);
        const double omega_d = std::pow(pi, 0.5 * d) / std::tgamma(1.0 + 0.5 * d);
        return 1.0 / (d * (d - 2.0) * omega_d);
    }
    return std::pow(pi, alpha - 0.5 * d) / (4.0 * pi * pi) *
           std::tgamma(0.5 * (d - alpha)) / std::tgamma(0.5 * alpha);
}

double kernel_of_distance(const KernelSpec& spec, double r) {
    if (spec.power_law())
        return r == 0.0 ? kInf : inv_pow(r, spec.exponent());
    if (spec.d == 1) return -r;
    return r == 0.0 ? kInf : -std::log(r); // d == 2
}

double eval_kernel(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
    check_dims(spec, x, y);
    return kernel_of_distance(spec, dist(x, y));
}

void eval_kernel_gradient(const KernelSpec& spec, std::span<const double> x,
                          std::span<const double> y, std::span<double> out) {
    check_dims(spec, x, y);
    if (out.size() != x.size())
        throw usage_error("kernel gradient: bad output size");
    const double r = dist(x, y);
    if (r == 0.0)
        throw singularity_error("kernel gradient undefined on the diagonal");
    double coef;
    if (spec.power_law()) {
        const double s = spec.exponent();
        coef = -s * inv_pow(r, s + 2.0);
    } else if (spec.d == 1) {
        coef = -1.0 / r; // grad of -|u| is -u/|u|
    } else {
        coef = -1.0 / (r * r); // grad of -log|u|
    }
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = coef * (x[k] - y[k]);
}

} // namespace rieszgas
