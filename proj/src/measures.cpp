#include "rieszgas/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rieszgas/quadrature.hpp"
#include "rieszgas/rng.hpp"
#include "rieszgas/transport.hpp"

namespace rieszgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double point_dist(std::span<const double> a, std::span<const double> b) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        r2 += t * t;
    }
    return std::sqrt(r2);
}

DiscreteMeasure subsample(const DiscreteMeasure& mu, int target, std::uint64_t seed,
                          std::uint64_t stream) {
    auto rng = make_rng(seed, stream);
    std::vector<double> cum(mu.size());
    double s = 0.0;
    for (int i = 0; i < mu.size(); ++i) {
        s += mu.weights[i];
        cum[i] = s;
    }
    std::uniform_real_distribution<double> unif(0.0, s);
    DiscreteMeasure out;
    out.d = mu.d;
    out.weights.assign(target, 1.0 / target);
    out.points.resize(static_cast<std::size_t>(target) * mu.d);
    for (int i = 0; i < target; ++i) {
        const auto it = std::lower_bound(cum.begin(), cum.end(), unif(rng));
        const int j = std::min<int>(it - cum.begin(), mu.size() - 1);
        auto p = mu.point(j);
        std::copy(p.begin(), p.end(), out.points.begin() + static_cast<std::size_t>(i) * mu.d);
    }
    return out;
}

} // namespace

DiscreteMeasure empirical_measure(const Configuration& config) {
    const int n = config.size();
    if (n < 1) throw usage_error("empirical_measure: empty configuration");
    DiscreteMeasure m;
    m.d = config.d;
    m.points = config.coords;
    m.weights.assign(n, 1.0 / n);
    return m;
}

double discrete_rate_I(const DiscreteMeasure& measure, const GasModel& model) {
    measure.validate();
    if (measure.d != model.dimension())
        throw usage_error("discrete_rate_I: dimension mismatch");
    const int n = measure.size();
    double field = 0.0;
    for (int i = 0; i < n; ++i)
        field += measure.weights[i] * model.field.value(measure.point(i));
    double pair = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double wij = measure.weights[i] * measure.weights[j];
            if (wij == 0.0) continue;
            const double k = eval_kernel(model.kernel, measure.point(i), measure.point(j));
            if (k == kInf) return kInf;
            pair += wij * k;
        }
    return field + model.beta * pair;
}

FMResult fortet_mourier(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const FMOptions& opts) {
    mu.validate();
    nu.validate();
    if (mu.d != nu.d) throw usage_error("fortet_mourier: dimension mismatch");

    const DiscreteMeasure* a = &mu;
    const DiscreteMeasure* b = &nu;
    DiscreteMeasure sa, sb;
    bool subsampled = false;
    if (mu.size() > opts.max_atoms) {
        sa = subsample(mu, opts.max_atoms, opts.subsample_seed, 1);
        a = &sa;
        subsampled = true;
    }
    if (nu.size() > opts.max_atoms) {
        sb = subsample(nu, opts.max_atoms, opts.subsample_seed, 2);
        b = &sb;
        subsampled = true;
    }

    FMResult res;
    res.subsampled = subsampled;

    if (opts.method == FMMethod::truncated_transport) {
        const int n = a->size();
        if (b->size() != n)
            throw usage_error("fortet_mourier: truncated-transport needs equal atom counts");
        for (int i = 0; i < n; ++i)
            if (std::abs(a->weights[i] - 1.0 / n) > 1e-12 ||
                std::abs(b->weights[i] - 1.0 / n) > 1e-12)
                throw usage_error("fortet_mourier: truncated-transport needs uniform weights");
        std::vector<std::vector<double>> cost(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cost[i][j] = std::min(point_dist(a->point(i), b->point(j)), 2.0);
        std::vector<int> assignment;
        res.distance = solve_assignment(cost, assignment) / n;
        res.method = subsampled ? "truncated-transport-subsampled" : "truncated-transport";
        return res;
    }

    // exact-lp: the finite LP over function values f_i (|f_i| <= 1,
    // |f_i - f_j| <= |x_i - x_j|) has as dual a transshipment with the
    // shortest-path cost min(|x_i - x_j|, 2); solve that exactly.
    std::vector<std::vector<double>> pts; // union support
    std::vector<double> net;
    auto add_atoms = [&](const DiscreteMeasure& m, double sign) {
        for (int i = 0; i < m.size(); ++i) {
            auto p = m.point(i);
            int found = -1;
            for (std::size_t q = 0; q < pts.size(); ++q)
                if (std::equal(pts[q].begin(), pts[q].end(), p.begin())) {
                    found = static_cast<int>(q);
                    break;
                }
            if (found < 0) {
                pts.emplace_back(p.begin(), p.end());
                net.push_back(sign * m.weights[i]);
            } else {
                net[found] += sign * m.weights[i];
            }
        }
    };
    add_atoms(*a, 1.0);
    add_atoms(*b, -1.0);

    std::vector<double> supply, demand;
    std::vector<int> sidx, didx;
    for (std::size_t q = 0; q < pts.size(); ++q) {
        if (net[q] > 0.0) {
            supply.push_back(net[q]);
            sidx.push_back(static_cast<int>(q));
        } else if (net[q] < 0.0) {
            demand.push_back(-net[q]);
            didx.push_back(static_cast<int>(q));
        }
    }
    if (supply.empty() || demand.empty()) {
        res.distance = 0.0;
        res.method = subsampled ? "exact-lp-subsampled" : "exact-lp";
        return res;
    }
    std::vector<std::vector<double>> cost(supply.size(),
                                          std::vector<double>(demand.size()));
    for (std::size_t i = 0; i < supply.size(); ++i)
        for (std::size_t j = 0; j < demand.size(); ++j) {
            double r2 = 0.0;
            for (int k = 0; k < mu.d; ++k) {
                const double t = pts[sidx[i]][k] - pts[didx[j]][k];
                r2 += t * t;
            }
            cost[i][j] = std::min(std::sqrt(r2), 2.0);
        }
    res.distance = min_cost_transport(supply, demand, cost);
    res.method = subsampled ? "exact-lp-subsampled" : "exact-lp";
    return res;
}

RadialCDF radial_cdf_of_density(const RadialDensity& density) {
    RadialCDF cdf;
    cdf.r0_ = density.r0;
    cdf.R0_ = density.R0;
    const double sd = sphere_surface(density.d);
    const int d = density.d;
    auto M = density.M;
    cdf.piece_ = [M, sd, d](double t) { return sd * M(t) * std::pow(t, d - 1); };

    const int n = 1024;
    cdf.grid_.resize(n + 1);
    cdf.cum_.assign(n + 1, 0.0);
    for (int i = 0; i <= n; ++i)
        cdf.grid_[i] = density.r0 + (density.R0 - density.r0) * i / n;
    for (int i = 1; i <= n; ++i)
        cdf.cum_[i] = cdf.cum_[i - 1] +
                      integrate(cdf.piece_, cdf.grid_[i - 1], cdf.grid_[i], 1e-13, 1e-13).value;
    const double total = cdf.cum_[n];
    if (std::abs(total - 1.0) > 1e-10)
        throw numerical_error("radial_cdf_of_density: density does not normalize");
    return cdf;
}

double RadialCDF::operator()(double r) const {
    if (grid_.empty()) throw usage_error("radial cdf: uninitialized");
    if (r <= r0_) return 0.0;
    if (r >= R0_) return 1.0;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
    const std::size_t i = std::max<std::size_t>(1, it - grid_.begin()) - 1;
    const double f = cum_[i] + integrate(piece_, grid_[i], r, 1e-13, 1e-13).value;
    return std::clamp(f, 0.0, 1.0);
}

double RadialCDF::quantile(double u) const {
    if (u <= 0.0) return r0_;
    if (u >= 1.0) return R0_;
    double lo = r0_, hi = R0_;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double radial_ks(const Configuration& config, const RadialCDF& cdf) {
    const int n = config.size();
    if (n < 1) throw usage_error("radial_ks: empty configuration");
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (double c : config.point(i)) r2 += c * c;
        radii[i] = std::sqrt(r2);
    }
    std::sort(radii.begin(), radii.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = cdf(radii[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return ks;
}

double max_radius(const Configuration& config) {
    const int n = config.size();
    if (n < 1) throw usage_error("max_radius: empty configuration");
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (double c : config.point(i)) r2 += c * c;
        best = std::max(best, r2);
    }
    return std::sqrt(best);
}

} // namespace rieszgas
