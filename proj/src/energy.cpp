#include "rieszgas/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rieszgas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PairKernel {
    bool power_law;
    int d;
    double s; // d - alpha for the power-law branch

    double value(double r) const {
        if (power_law) {
            if (r == 0.0) return kInf;
            if (s == 1.0) return 1.0 / r;
            return std::pow(r, -s);
        }
        if (d == 1) return -r;
        return r == 0.0 ? kInf : -std::log(r);
    }

    // d k / d r
    double slope(double r) const {
        if (power_law) {
            if (s == 1.0) return -1.0 / (r * r);
            return -s * std::pow(r, -s - 1.0);
        }
        if (d == 1) return -1.0;
        return -1.0 / r;
    }
};

PairKernel pair_kernel(const KernelSpec& spec) {
    return {spec.power_law(), spec.d, spec.exponent()};
}

double pair_dist(const double* a, const double* b, int d) {
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) {
        const double t = a[k] - b[k];
        r2 += t * t;
    }
    return std::sqrt(r2);
}

} // namespace

double total_energy(const Configuration& config, const GasModel& model, SumMode mode) {
    const int n = config.size();
    const int d = config.d;
    if (d != model.dimension()) throw usage_error("energy: dimension mismatch");
    const PairKernel pk = pair_kernel(model.kernel);
    const double* x = config.coords.data();
    const double inv_n = 1.0 / n;
    const double pair_coef = model.beta * inv_n * inv_n;

    if (mode == SumMode::deterministic) {
        std::vector<double> terms;
        terms.reserve(static_cast<std::size_t>(n) + static_cast<std::size_t>(n) * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
            terms.push_back(inv_n * model.field.value(config.point(i)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double v = pk.value(pair_dist(x + (std::size_t)i * d, x + (std::size_t)j * d, d));
                if (v == kInf) return kInf;
                terms.push_back(pair_coef * v);
            }
        std::sort(terms.begin(), terms.end());
        double sum = 0.0;
        for (double t : terms) sum += t;
        return sum;
    }

    double field_sum = 0.0;
    for (int i = 0; i < n; ++i) field_sum += model.field.value(config.point(i));
    double pair_sum = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : pair_sum) schedule(static) if (n > 256)
#endif
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = i + 1; j < n; ++j)
            row += pk.value(pair_dist(x + (std::size_t)i * d, x + (std::size_t)j * d, d));
        pair_sum += row;
    }
    return inv_n * field_sum + pair_coef * pair_sum;
}

void energy_gradient(const Configuration& config, const GasModel& model,
                     std::span<double> out) {
    const int n = config.size();
    const int d = config.d;
    if (static_cast<int>(out.size()) != n * d)
        throw usage_error("energy gradient: bad output size");
    const PairKernel pk = pair_kernel(model.kernel);
    const double* x = config.coords.data();
    const double inv_n = 1.0 / n;
    const double pair_coef = model.beta * inv_n * inv_n;

    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> g(d);
    for (int i = 0; i < n; ++i) {
        model.field.gradient(config.point(i), g);
        for (int k = 0; k < d; ++k) out[(std::size_t)i * d + k] = inv_n * g[k];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double* xi = x + (std::size_t)i * d;
            const double* xj = x + (std::size_t)j * d;
            const double r = pair_dist(xi, xj, d);
            if (r == 0.0)
                throw singularity_error("energy gradient: coincident particles");
            const double coef = pair_coef * pk.slope(r) / r;
            for (int k = 0; k < d; ++k) {
                const double t = coef * (xi[k] - xj[k]);
                out[(std::size_t)i * d + k] += t;
                out[(std::size_t)j * d + k] -= t;
            }
        }
}

double energy_and_gradient(const Configuration& config, const GasModel& model,
                           std::span<double> grad_out) {
    const int n = config.size();
    const int d = config.d;
    if (static_cast<int>(grad_out.size()) != n * d)
        throw usage_error("energy gradient: bad output size");
    const PairKernel pk = pair_kernel(model.kernel);
    const double* x = config.coords.data();
    const double inv_n = 1.0 / n;
    const double pair_coef = model.beta * inv_n * inv_n;

    double field_sum = 0.0;
    std::vector<double> g(d);
    for (int i = 0; i < n; ++i) {
        field_sum += model.field.value(config.point(i));
        model.field.gradient(config.point(i), g);
        for (int k = 0; k < d; ++k) grad_out[(std::size_t)i * d + k] = inv_n * g[k];
    }
    double pair_sum = 0.0;
    bool singular = false;
    for (int i = 0; i < n && !singular; ++i) {
        const double* xi = x + (std::size_t)i * d;
        for (int j = i + 1; j < n; ++j) {
            const double* xj = x + (std::size_t)j * d;
            const double r = pair_dist(xi, xj, d);
            if (r == 0.0) {
                singular = true;
                break;
            }
            pair_sum += pk.value(r);
            const double coef = pair_coef * pk.slope(r) / r;
            for (int k = 0; k < d; ++k) {
                const double t = coef * (xi[k] - xj[k]);
                grad_out[(std::size_t)i * d + k] += t;
                grad_out[(std::size_t)j * d + k] -= t;
            }
        }
    }
    if (singular) return kInf;
    return inv_n * field_sum + pair_coef * pair_sum;
}

double energy_delta(const Configuration& config, const GasModel& model, int i,
                    std::span<const double> newpos) {
    const int n = config.size();
    const int d = config.d;
    if (i < 0 || i >= n) throw usage_error("energy delta: particle index out of range");
    if (static_cast<int>(newpos.size()) != d)
        throw usage_error("energy delta: bad point dimension");
    const PairKernel pk = pair_kernel(model.kernel);
    const double* x = config.coords.data();
    const double* xi = x + (std::size_t)i * d;
    const double inv_n = 1.0 / n;
    const double pair_coef = model.beta * inv_n * inv_n;

    double delta = inv_n * (model.field.value(newpos) - model.field.value(config.point(i)));
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double* xj = x + (std::size_t)j * d;
        const double rn = pair_dist(newpos.data(), xj, d);
        const double vn = pk.value(rn);
        if (vn == kInf) return kInf;
        delta += pair_coef * (vn - pk.value(pair_dist(xi, xj, d)));
    }
    return delta;
}

} // namespace rieszgas
