#include "rieszgas/partition.hpp"

#include <algorithm>
#include <cmath>

#include "rieszgas/quadrature.hpp"

namespace rieszgas {

Box::Box(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.empty() || lo.size() != hi.size())
        throw usage_error("box: need matching non-empty bounds");
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (!(lo[k] < hi[k])) throw usage_error("box: need lo < hi on every axis");
}

double Box::min_edge() const {
    double m = hi[0] - lo[0];
    for (std::size_t k = 1; k < lo.size(); ++k) m = std::min(m, hi[k] - lo[k]);
    return m;
}

double Box::max_edge() const {
    double m = hi[0] - lo[0];
    for (std::size_t k = 1; k < lo.size(); ++k) m = std::max(m, hi[k] - lo[k]);
    return m;
}

bool Box::contains(std::span<const double> x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (x[k] < lo[k] || x[k] > hi[k]) return false;
    return true;
}

namespace {

double eval_density(const DensityFn& h, std::span<const double> x) {
    const double v = h(x);
    if (!std::isfinite(v)) throw usage_error("partition: density evaluated non-finite");
    return v;
}

double mass_rec(const DensityFn& h, const Box& box, std::vector<double>& pt,
                std::size_t axis, double tol) {
    if (axis + 1 == box.lo.size()) {
        auto f = [&](double t) {
            pt[axis] = t;
            return eval_density(h, pt);
        };
        return integrate(f, box.lo[axis], box.hi[axis], tol, 1e-12).value;
    }
    auto f = [&](double t) {
        pt[axis] = t;
        return mass_rec(h, box, pt, axis + 1, tol * 0.25);
    };
    return integrate(f, box.lo[axis], box.hi[axis], tol, 1e-12).value;
}

// mass of box with the first `axis` coordinates already fixed in pt
double slab_mass(const DensityFn& h, const Box& box, double tol) {
    std::vector<double> pt(box.lo.size(), 0.0);
    return mass_rec(h, box, pt, 0, tol);
}

// t in (lo0, hi0) such that the sub-box mass up to t equals target
double mass_quantile(const DensityFn& h, const Box& box, double target, double tol) {
    double lo = box.lo[0], hi = box.hi[0];
    Box probe = box;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        probe.hi[0] = mid;
        const double m = slab_mass(h, probe, tol);
        if (std::abs(m - target) < 0.1 * tol * std::max(1.0, target)) return mid;
        (m < target ? lo : hi) = mid;
        if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

void partition_rec(const DensityFn& h, const Box& box, int n, double tol,
                   std::vector<Box>& out) {
    const int dim = box.dimension();
    if (n == 1) {
        out.push_back(box);
        return;
    }

    int b = static_cast<int>(std::floor(std::pow(double(n), 1.0 / dim) + 1e-12));
    while (std::pow(double(b + 1), dim) <= n + 1e-9) ++b;
    const double b_crit = 1.0 / (std::pow(2.0, 1.0 / dim) - 1.0);

    if (dim == 1 || b <= b_crit) {
        // straight 1-d slicing into n equal-mass slabs
        const double total = slab_mass(h, box, tol);
        Box slab = box;
        double left = box.lo[0];
        for (int i = 1; i <= n; ++i) {
            double right = (i == n) ? box.hi[0]
                                    : mass_quantile(h, box, total * i / n, tol);
            slab.lo[0] = left;
            slab.hi[0] = right;
            out.push_back(slab);
            left = right;
        }
        return;
    }

    // base-b digit decomposition: n = b^dim + sum_k alpha_k b^k,
    // slab i carries n_i = b^{dim-1} + sum_k [i <= alpha_k] b^k cells
    long long bpow = 1;
    for (int k = 0; k < dim; ++k) bpow *= b;
    const long long m = n - bpow;
    std::vector<int> digits(dim, 0);
    long long rem = m;
    for (int k = 0; k < dim; ++k) {
        digits[k] = static_cast<int>(rem % b);
        rem /= b;
    }
    std::vector<long long> counts(b, 0);
    long long bk = 1; // b^{dim-1}
    for (int k = 0; k < dim - 1; ++k) bk *= b;
    for (int i = 1; i <= b; ++i) {
        long long ni = bk;
        long long p = 1;
        for (int k = 0; k < dim; ++k) {
            if (i <= digits[k]) ni += p;
            p *= b;
        }
        counts[i - 1] = ni;
    }

    const double total = slab_mass(h, box, tol);
    double left = box.lo[0];
    double cum = 0.0;
    for (int i = 0; i < b; ++i) {
        cum += static_cast<double>(counts[i]);
        double right = (i == b - 1) ? box.hi[0]
                                    : mass_quantile(h, box, total * (cum / n), tol);
        // recurse on the remaining axes of the slab
        Box inner(std::vector<double>(box.lo.begin() + 1, box.lo.end()),
                  std::vector<double>(box.hi.begin() + 1, box.hi.end()));
        const double a = left, c = right;
        DensityFn sliced = [&h, a, c, dim](std::span<const double> y) {
            std::vector<double> full(dim);
            std::copy(y.begin(), y.end(), full.begin() + 1);
            auto f = [&](double t) {
                full[0] = t;
                return eval_density(h, full);
            };
            return integrate(f, a, c, 1e-12, 1e-12).value;
        };
        std::vector<Box> sub;
        partition_rec(sliced, inner, static_cast<int>(counts[i]), tol, sub);
        for (const Box& s : sub) {
            std::vector<double> lo2{left};
            std::vector<double> hi2{right};
            lo2.insert(lo2.end(), s.lo.begin(), s.lo.end());
            hi2.insert(hi2.end(), s.hi.begin(), s.hi.end());
            out.emplace_back(std::move(lo2), std::move(hi2));
        }
        left = right;
    }
}

} // namespace

double box_mass(const Box& box, const DensityFn& density, double tol) {
    return slab_mass(density, box, tol);
}

std::vector<Box> nice_partition(const Box& box, const DensityFn& density, int n) {
    if (n < 1) throw usage_error("nice_partition: n must be >= 1");
    std::vector<Box> out;
    out.reserve(n);
    partition_rec(density, box, n, 1e-11, out);
    return out;
}

} // namespace rieszgas
