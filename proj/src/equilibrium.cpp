#include "rieszgas/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "rieszgas/quadrature.hpp"
#include "rieszgas/rng.hpp"

namespace rieszgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double sphere_surface(int d) {
    if (d < 1) throw usage_error("sphere_surface: d must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double RadialDensity::mass(double tol) const {
    const double sd = sphere_surface(d);
    auto f = [&](double t) { return M(t) * std::pow(t, d - 1); };
    return sd * integrate(f, r0, R0, tol, tol).value;
}

RadialDensity RadialDensity::uniform_ball(int d, double radius) {
    if (radius <= 0.0) throw usage_error("uniform_ball: radius must be positive");
    const double m = d / (sphere_surface(d) * std::pow(radius, d));
    return RadialDensity{d, 0.0, radius, [m](double) { return m; }};
}

double uniform_ball_radius(int d, double beta) {
    if (d < 3) throw unsupported_model_error("uniform_ball_radius: requires d >= 3");
    if (beta <= 0.0) throw usage_error("uniform_ball_radius: beta must be positive");
    return std::pow(beta * (d - 2) / 2.0, 1.0 / d);
}

EquilibriumResult solve_radial_coulomb(int d, const ExternalField& field, double beta) {
    if (d < 3) throw unsupported_model_error("solve_radial_coulomb: requires d >= 3");
    if (beta <= 0.0) throw usage_error("solve_radial_coulomb: beta must be positive");
    if (!field.is_radial())
        throw usage_error("solve_radial_coulomb: field must be radial");
    if (field.dimension() != d)
        throw usage_error("solve_radial_coulomb: field dimension mismatch");

    const double target = beta * (d - 2);
    auto w = [&](double r) { return field.w(r); };

    // bracket R0 by doubling
    double hi = 1.0;
    int expand = 0;
    while (w(hi) < target) {
        hi *= 2.0;
        if (++expand > 60)
            throw unsupported_model_error(
                "solve_radial_coulomb: field too weak, w(r) never reaches beta(d-2)");
    }

    // r0 = inf { r > 0 : v'(r) > 0 }
    double r0 = 0.0;
    {
        const double eps = 1e-10 * hi;
        if (field.dv(eps) <= 0.0) {
            // scan for the sign change of v'
            double lo = eps, up = hi;
            bool found = false;
            const int n_scan = 4096;
            double prev = eps;
            for (int i = 1; i <= n_scan; ++i) {
                double t = eps + (hi - eps) * i / n_scan;
                if (field.dv(t) > 0.0) {
                    lo = prev;
                    up = t;
                    found = true;
                    break;
                }
                prev = t;
            }
            if (!found)
                throw unsupported_model_error(
                    "solve_radial_coulomb: v' never becomes positive");
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + up);
                (field.dv(mid) > 0.0 ? up : lo) = mid;
            }
            r0 = 0.5 * (lo + up);
        }
    }

    // R0 solves w(R0) = beta(d-2); w is increasing past r0 under the
    // solver's hypotheses
    double lo = r0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (w(mid) < target ? lo : hi) = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    const double R0 = 0.5 * (lo + hi);
    if (!(R0 > r0))
        throw unsupported_model_error("solve_radial_coulomb: empty support ring");

    // hypothesis check: w increasing on [r0, R0], or v convex
    {
        bool w_increasing = true;
        const int n_chk = 512;
        double prev = w(r0 + (R0 - r0) * 1e-6);
        for (int i = 1; i <= n_chk; ++i) {
            double t = r0 + (R0 - r0) * (1e-6 + (1.0 - 1e-6) * i / n_chk);
            double cur = w(t);
            if (cur < prev - 1e-9 * std::max(1.0, std::abs(prev))) {
                w_increasing = false;
                break;
            }
            prev = cur;
        }
        bool v_convex = false;
        if (!w_increasing && field.has_ddv()) {
            v_convex = true;
            for (int i = 0; i <= n_chk; ++i) {
                double t = r0 + (R0 - r0) * i / n_chk;
                if (field.ddv(t) < -1e-9) {
                    v_convex = false;
                    break;
                }
            }
        }
        if (!w_increasing && !v_convex)
            throw unsupported_model_error(
                "solve_radial_coulomb: hypothesis violated (w not increasing and v not convex)");
    }

    const double sd = sphere_surface(d);
    const double denom = beta * (d - 2) * sd;
    const bool analytic = field.has_ddv();
    const ExternalField fld = field; // copy into the closure
    auto Mfun = [fld, d, denom, analytic](double r) {
        double wp;
        if (analytic)
            wp = (d - 1) * std::pow(r, d - 2) * fld.dv(r) + std::pow(r, d - 1) * fld.ddv(r);
        else {
            const double h = 1e-6 * std::max(1.0, r);
            wp = (fld.w(r + h) - fld.w(std::max(0.0, r - h))) / (2.0 * h);
        }
        return wp / (denom * std::pow(r, d - 1));
    };

    RadialDensity density{d, r0, R0, Mfun};
    const double m = density.mass(1e-13);
    if (std::abs(m - 1.0) > 1e-8)
        throw numerical_error("solve_radial_coulomb: equilibrium density fails to normalize");

    EquilibriumResult res;
    res.density = density;
    res.beta = beta;
    res.robin_constant = beta / std::pow(R0, d - 2) + field.v(R0);

    // uniform on a ball iff r0 = 0 and M is constant
    if (r0 == 0.0) {
        bool flat = true;
        const double m0 = Mfun(R0 / 2);
        for (int i = 1; i <= 32; ++i) {
            double t = R0 * i / 33.0;
            if (std::abs(Mfun(t) - m0) > 1e-6 * std::abs(m0)) {
                flat = false;
                break;
            }
        }
        if (flat) res.ball_radius = R0;
    }
    return res;
}

namespace {

// F(rho) = int_{r0}^{rho} M t^{d-1} dt, clipped to the support
double shell_mass(const RadialDensity& den, double rho, double tol = 1e-12) {
    const double up = std::min(rho, den.R0);
    if (up <= den.r0) return 0.0;
    auto f = [&](double t) { return den.M(t) * std::pow(t, den.d - 1); };
    return integrate(f, den.r0, up, tol, tol).value;
}

} // namespace

double radial_coulomb_potential(const RadialDensity& density, double r) {
    if (density.d < 3) throw usage_error("radial_coulomb_potential: requires d >= 3");
    if (r < 0.0) throw usage_error("radial_coulomb_potential: r must be >= 0");
    const int d = density.d;
    const double sd = sphere_surface(d);
    double near = 0.0;
    if (r > density.r0 && r > 0.0)
        near = sd * shell_mass(density, r) / std::pow(r, d - 2);
    double far = 0.0;
    const double lo = std::max(r, density.r0);
    if (lo < density.R0) {
        auto f = [&](double t) { return density.M(t) * t; };
        far = sd * integrate(f, lo, density.R0, 1e-13, 1e-13).value;
    }
    return near + far;
}

double radial_coulomb_potential_derivative(const RadialDensity& density, double r) {
    const int d = density.d;
    if (r <= density.r0 || r == 0.0) return 0.0;
    const double sd = sphere_surface(d);
    return -(d - 2) * sd * shell_mass(density, r) / std::pow(r, d - 1);
}

double sphere_potential(double r_sphere, double x_radius, int d) {
    if (d < 3) throw usage_error("sphere_potential: requires d >= 3");
    if (r_sphere <= 0.0) throw usage_error("sphere_potential: sphere radius must be positive");
    if (x_radius < 0.0) throw usage_error("sphere_potential: x_radius must be >= 0");
    const double r = x_radius < r_sphere ? r_sphere : x_radius;
    return 1.0 / std::pow(r, d - 2);
}

void DiscreteMeasure::validate() const {
    if (d < 1 || weights.empty() || points.size() != weights.size() * static_cast<std::size_t>(d))
        throw usage_error("discrete measure: inconsistent sizes");
    double s = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw usage_error("discrete measure: negative weight");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw usage_error("discrete measure: weights must sum to 1");
}

PotentialEstimate riesz_potential_estimate(const DiscreteMeasure& source, double alpha,
                                           std::span<const double> x) {
    source.validate();
    if (!(alpha > 0.0 && alpha < source.d))
        throw usage_error("riesz potential: alpha must lie in (0, d)");
    if (static_cast<int>(x.size()) != source.d)
        throw usage_error("riesz potential: point dimension mismatch");
    const double s = source.d - alpha;
    double val = 0.0;
    for (int i = 0; i < source.size(); ++i) {
        auto y = source.point(i);
        double r2 = 0.0;
        for (int k = 0; k < source.d; ++k) {
            const double t = x[k] - y[k];
            r2 += t * t;
        }
        if (r2 == 0.0) {
            if (source.weights[i] > 0.0) return {kInf, 0.0};
            continue;
        }
        val += source.weights[i] * std::pow(std::sqrt(r2), -s);
    }
    return {val, 0.0};
}

PotentialEstimate riesz_potential_estimate(const RadialDensity& source, double alpha,
                                           std::span<const double> x,
                                           std::int64_t budget, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < source.d))
        throw usage_error("riesz potential: alpha must lie in (0, d)");
    if (static_cast<int>(x.size()) != source.d)
        throw usage_error("riesz potential: point dimension mismatch");
    if (alpha == 2.0 && source.d >= 3) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return {radial_coulomb_potential(source, std::sqrt(r2)), 0.0};
    }

    // stratified-radius Monte Carlo
    const int d = source.d;
    const double s = d - alpha;
    const int n_grid = 4096;
    std::vector<double> rs(n_grid + 1), cum(n_grid + 1, 0.0);
    const double sd = sphere_surface(d);
    for (int i = 0; i <= n_grid; ++i)
        rs[i] = source.r0 + (source.R0 - source.r0) * i / n_grid;
    for (int i = 1; i <= n_grid; ++i) {
        auto f = [&](double t) { return source.M(t) * std::pow(t, d - 1); };
        cum[i] = cum[i - 1] + sd * integrate(f, rs[i - 1], rs[i], 1e-12, 1e-10).value;
    }
    const double total = cum[n_grid];
    auto inv_cdf = [&](double u) {
        const double m = u * total;
        auto it = std::lower_bound(cum.begin(), cum.end(), m);
        std::size_t i = std::max<std::size_t>(1, it - cum.begin());
        i = std::min<std::size_t>(i, n_grid);
        const double t = (m - cum[i - 1]) / std::max(cum[i] - cum[i - 1], 1e-300);
        return rs[i - 1] + t * (rs[i] - rs[i - 1]);
    };

    const int n_strata = 64;
    const std::int64_t per = std::max<std::int64_t>(2, budget / n_strata);
    auto rng = make_rng(seed, 0x7e57);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y(d);
    double mean_sum = 0.0, var_sum = 0.0;
    for (int k = 0; k < n_strata; ++k) {
        double m1 = 0.0, m2 = 0.0;
        for (std::int64_t j = 0; j < per; ++j) {
            const double u = (k + unif(rng)) / n_strata;
            const double rho = inv_cdf(u);
            double norm = 0.0;
            for (int c = 0; c < d; ++c) {
                y[c] = gauss(rng);
                norm += y[c] * y[c];
            }
            norm = std::sqrt(norm);
            double r2 = 0.0;
            for (int c = 0; c < d; ++c) {
                const double t = x[c] - rho * y[c] / norm;
                r2 += t * t;
            }
            const double val = std::pow(std::sqrt(r2), -s);
            m1 += val;
            m2 += val * val;
        }
        m1 /= per;
        m2 /= per;
        mean_sum += m1 / n_strata;
        var_sum += std::max(0.0, m2 - m1 * m1) / (per - 1) / (n_strata * n_strata);
    }
    return {mean_sum, std::sqrt(var_sum)};
}

double robin_constant(const RadialDensity& density, const GasModel& model) {
    if (!model.field.is_radial())
        throw usage_error("robin_constant: radial field required");
    const int d = density.d;
    const double sd = sphere_surface(d);
    auto f = [&](double t) {
        const double u = radial_coulomb_potential(density, t);
        return (model.beta * u + model.field.v(t)) * density.M(t) * std::pow(t, d - 1);
    };
    return sd * integrate(f, density.r0, density.R0, 1e-10, 1e-10).value;
}

ResidualReport euler_lagrange_residual(const RadialDensity& candidate,
                                       const GasModel& model,
                                       const std::vector<double>& grid) {
    if (grid.empty()) throw usage_error("euler_lagrange_residual: empty grid");
    if (!(model.kernel.power_law() && model.kernel.exponent() == model.kernel.d - 2.0))
        throw usage_error("euler_lagrange_residual: requires an alpha = 2 kernel");
    if (!model.field.is_radial())
        throw usage_error("euler_lagrange_residual: radial field required");

    std::vector<double> on_vals, off_vals;
    const double edge = 1e-12 * std::max(1.0, candidate.R0);
    for (double r : grid) {
        const double val =
            model.beta * radial_coulomb_potential(candidate, r) + model.field.v(r);
        if (r >= candidate.r0 - edge && r <= candidate.R0 + edge)
            on_vals.push_back(val);
        else
            off_vals.push_back(val);
    }
    if (on_vals.empty())
        throw usage_error("euler_lagrange_residual: no grid point on the support");

    ResidualReport rep;
    double sum = 0.0;
    for (double v : on_vals) sum += v;
    rep.fitted_C = sum / on_vals.size();
    for (double v : on_vals)
        rep.on_support_max_dev = std::max(rep.on_support_max_dev, std::abs(v - rep.fitted_C));
    rep.off_support_min_excess = off_vals.empty() ? 0.0 : kInf;
    for (double v : off_vals)
        rep.off_support_min_excess = std::min(rep.off_support_min_excess, v - rep.fitted_C);
    return rep;
}

ExternalField prescribed_field(const RadialDensity& target, double alpha, int d,
                               double R, std::int64_t mc_budget, std::uint64_t seed) {
    if (d != target.d) throw usage_error("prescribed_field: dimension mismatch");
    if (!(alpha > 0.0 && alpha < d))
        throw usage_error("prescribed_field: alpha must lie in (0, d)");
    if (R <= 0.0 || target.R0 > R)
        throw usage_error("prescribed_field: target support must lie inside B(0, R)");

    auto hinge = [R](double r) { return std::max(r * r - R, 0.0); };
    auto dhinge = [R](double r) { return r * r > R ? 2.0 * r : 0.0; };

    if (alpha == 2.0 && d >= 3) {
        // cubic Hermite table of the potential inside the support; exact
        // 1/r^{d-2} tail outside
        const int n = 2048;
        auto rg = std::make_shared<std::vector<double>>(n + 1);
        auto uu = std::make_shared<std::vector<double>>(n + 1);
        auto up = std::make_shared<std::vector<double>>(n + 1);
        const double R0 = target.R0;
        for (int i = 0; i <= n; ++i) {
            const double r = R0 * i / n;
            (*rg)[i] = r;
            (*uu)[i] = radial_coulomb_potential(target, r);
            (*up)[i] = radial_coulomb_potential_derivative(target, r);
        }
        const double h = R0 / n;
        auto eval = [rg, uu, up, h, R0, d](double r, bool deriv) {
            if (r >= R0) {
                const double u = std::pow(r, -(d - 2.0));
                return deriv ? -(d - 2.0) * u / r : u;
            }
            int i = std::min(static_cast<int>(r / h), (int)rg->size() - 2);
            const double t = (r - (*rg)[i]) / h;
            const double u0 = (*uu)[i], u1 = (*uu)[i + 1];
            const double p0 = (*up)[i] * h, p1 = (*up)[i + 1] * h;
            const double t2 = t * t, t3 = t2 * t;
            if (!deriv)
                return (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * p0 +
                       (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * p1;
            return ((6 * t2 - 6 * t) * u0 + (3 * t2 - 4 * t + 1) * p0 +
                    (-6 * t2 + 6 * t) * u1 + (3 * t2 - 2 * t) * p1) / h;
        };
        return ExternalField::radial_profile(
            d, [eval, hinge](double r) { return -eval(r, false) + hinge(r); },
            [eval, dhinge](double r) { return -eval(r, true) + dhinge(r); }, nullptr,
            "prescribed");
    }

    // general alpha: Monte Carlo table with a power-law tail
    const int n = 512;
    const double Rmax = std::max(2.0 * std::sqrt(std::max(R, 1.0)), 2.0 * target.R0);
    auto rg = std::make_shared<std::vector<double>>(n + 1);
    auto uu = std::make_shared<std::vector<double>>(n + 1);
    std::vector<double> x(d, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double r = Rmax * i / n;
        (*rg)[i] = r;
        x[0] = r;
        (*uu)[i] = riesz_potential_estimate(target, alpha, x, mc_budget, seed + i).value;
    }
    const double h = Rmax / n;
    const double s = d - alpha;
    auto eval = [rg, uu, h, Rmax, s, n](double r, bool deriv) {
        if (r >= Rmax) {
            const double u = std::pow(r, -s);
            return deriv ? -s * u / r : u;
        }
        int i = std::clamp(static_cast<int>(r / h), 0, n - 1);
        if (!deriv) {
            const double t = (r - (*rg)[i]) / h;
            return (1.0 - t) * (*uu)[i] + t * (*uu)[i + 1];
        }
        return ((*uu)[i + 1] - (*uu)[i]) / h;
    };
    return ExternalField::radial_profile(
        d, [eval, hinge](double r) { return -eval(r, false) + hinge(r); },
        [eval, dhinge](double r) { return -eval(r, true) + dhinge(r); }, nullptr,
        "prescribed-mc");
}

} // namespace rieszgas
