#ifndef RIESZGAS_MODEL_HPP
#define RIESZGAS_MODEL_HPP

#include <cmath>
#include <span>
#include <vector>

#include "rieszgas/errors.hpp"
#include "rieszgas/field.hpp"
#include "rieszgas/kernel.hpp"

namespace rieszgas {

/// N particle positions in R^d, stored row-major.
struct Configuration {
    int d = 0;
    std::vector<double> coords;

    Configuration() = default;
    Configuration(int dim, int n) : d(dim), coords(static_cast<std::size_t>(dim) * n, 0.0) {
        if (dim < 1 || n < 1) throw usage_error("configuration: need d >= 1 and N >= 1");
    }

    int size() const { return d == 0 ? 0 : static_cast<int>(coords.size()) / d; }

    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }
    std::span<double> point(int i) {
        return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }

    bool finite() const {
        for (double c : coords)
            if (!std::isfinite(c)) return false;
        return true;
    }
};

/// Kernel + field + coupling; the pair interaction is W(x,y) = beta*k(x-y).
struct GasModel {
    KernelSpec kernel;
    ExternalField field;
    double beta = 1.0;

    GasModel() = default;
    GasModel(KernelSpec k, ExternalField f, double b) : kernel(k), field(std::move(f)), beta(b) {
        if (beta <= 0.0) throw usage_error("model: beta must be positive");
        if (kernel.d != field.dimension())
            throw usage_error("model: kernel and field dimension mismatch");
    }

    int dimension() const { return kernel.d; }
};

} // namespace rieszgas

#endif
