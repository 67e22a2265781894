#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rieszgas/energy.hpp"
#include "rieszgas/measures.hpp"
#include "rieszgas/rng.hpp"
#include "rieszgas/transport.hpp"

#include "support/oracles.hpp"

using namespace rieszgas;

namespace {

DiscreteMeasure delta_at(std::vector<double> x) {
    DiscreteMeasure m;
    m.d = static_cast<int>(x.size());
    m.points = std::move(x);
    m.weights = {1.0};
    return m;
}

DiscreteMeasure random_measure(int d, int atoms, double spread, std::uint64_t seed,
                               bool uniform_weights) {
    auto rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> unif(-spread, spread);
    DiscreteMeasure m;
    m.d = d;
    m.points.resize(static_cast<std::size_t>(atoms) * d);
    for (double& c : m.points) c = unif(rng);
    if (uniform_weights) {
        m.weights.assign(atoms, 1.0 / atoms);
    } else {
        std::uniform_real_distribution<double> uw(0.1, 1.0);
        double s = 0.0;
        m.weights.resize(atoms);
        for (double& w : m.weights) s += (w = uw(rng));
        for (double& w : m.weights) w /= s;
    }
    return m;
}

std::vector<std::vector<double>> pair_distances(const DiscreteMeasure& a,
                                                const DiscreteMeasure& b) {
    // distance matrix over the union support; first a's atoms, then b's
    const int n = a.size() + b.size();
    auto pt = [&](int i) { return i < a.size() ? a.point(i) : b.point(i - a.size()); };
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double r2 = 0.0;
            for (int k = 0; k < a.d; ++k) {
                const double t = pt(i)[k] - pt(j)[k];
                r2 += t * t;
            }
            dist[i][j] = std::sqrt(r2);
        }
    return dist;
}

double fm_brute_lp(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    std::vector<double> c(a.size() + b.size(), 0.0);
    for (int i = 0; i < a.size(); ++i) c[i] = a.weights[i];
    for (int j = 0; j < b.size(); ++j) c[a.size() + j] -= b.weights[j];
    return oracles::bounded_lipschitz_lp(c, pair_distances(a, b));
}

} // namespace

TEST_CASE("empirical measure basics") {
    Configuration c(3, 2);
    c.point(0)[0] = 1.0;
    c.point(1)[0] = -1.0;
    const auto m = empirical_measure(c);
    CHECK(m.size() == 2);
    CHECK(m.weights[0] == doctest::Approx(0.5));
    double s = 0.0;
    for (double w : m.weights) s += w;
    CHECK(std::abs(s - 1.0) <= 1e-15);
}

TEST_CASE("discrete rate functional matches the configuration energy") {
    const GasModel model(KernelSpec::coulomb(3), ExternalField::quadratic(3), 1.0);
    Configuration c(3, 2);
    c.point(0)[0] = 1.0;
    c.point(1)[0] = -1.0;
    CHECK(discrete_rate_I(empirical_measure(c), model) == doctest::Approx(1.125));

    auto rng = make_rng(31, 0);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Configuration r(3, 7);
    for (double& x : r.coords) x = unif(rng);
    CHECK(discrete_rate_I(empirical_measure(r), model) ==
          doctest::Approx(total_energy(r, model)).epsilon(1e-10));

    // single atom at origin with V=|x|^2
    const auto atom = delta_at({0.0, 0.0, 0.0});
    CHECK(discrete_rate_I(atom, model) == doctest::Approx(0.0));

    // linear in beta on the pair term
    const GasModel model2(KernelSpec::coulomb(3), ExternalField::quadratic(3), 2.0);
    const auto mu = random_measure(3, 5, 1.0, 77, false);
    const double i1 = discrete_rate_I(mu, model);
    const double i2 = discrete_rate_I(mu, model2);
    double field = 0.0;
    for (int i = 0; i < mu.size(); ++i)
        field += mu.weights[i] * model.field.value(mu.point(i));
    CHECK(i2 - field == doctest::Approx(2.0 * (i1 - field)).epsilon(1e-12));
}

TEST_CASE("fortet-mourier distinguished values") {
    const auto d0 = delta_at({0.0, 0.0, 0.0});
    const auto d1 = delta_at({1.0, 0.0, 0.0});
    const auto d5 = delta_at({5.0, 0.0, 0.0});
    CHECK(fortet_mourier(d0, d0).distance == doctest::Approx(0.0));
    CHECK(fortet_mourier(d0, d1).distance == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fortet_mourier(d0, d5).distance == doctest::Approx(2.0).epsilon(1e-9));
    // brute-force LP gives the same distinguished values
    CHECK(fm_brute_lp(d0, d1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fm_brute_lp(d0, d5) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("metric axioms on random instances") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto a = random_measure(2, 3 + seed % 6, 2.0, 100 + seed, seed % 2 == 0);
        const auto b = random_measure(2, 2 + seed % 7, 2.0, 200 + seed, seed % 2 == 1);
        const auto c = random_measure(2, 4, 2.0, 300 + seed, true);
        const double dab = fortet_mourier(a, b).distance;
        const double dba = fortet_mourier(b, a).distance;
        const double dac = fortet_mourier(a, c).distance;
        const double dcb = fortet_mourier(c, b).distance;
        CHECK(dab == doctest::Approx(dba).epsilon(1e-9));
        CHECK(dab <= dac + dcb + 1e-9);
        CHECK(dab >= 0.0);
        CHECK(dab <= 2.0);
        CHECK(fortet_mourier(a, a).distance == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(dab > 1e-9); // distinct random measures are separated
    }
}

TEST_CASE("exact-lp agrees with the brute-force simplex on small instances") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int na = 1 + static_cast<int>(seed % 3);
        const int nb = 1 + static_cast<int>((seed / 3) % 3);
        const auto a = random_measure(2, na, 1.5 + (seed % 4), 400 + seed, false);
        const auto b = random_measure(2, nb, 1.5 + (seed % 4), 500 + seed, false);
        CHECK(fortet_mourier(a, b).distance ==
              doctest::Approx(fm_brute_lp(a, b)).epsilon(1e-6));
    }
}

TEST_CASE("truncated transport equals exact-lp on equal-size uniform instances") {
    FMOptions trunc;
    trunc.method = FMMethod::truncated_transport;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const auto a = random_measure(3, n, 2.0, 600 + seed, true);
        const auto b = random_measure(3, n, 2.0, 700 + seed, true);
        const double lp = fortet_mourier(a, b).distance;
        const auto tt = fortet_mourier(a, b, trunc);
        CHECK(tt.method == "truncated-transport");
        CHECK(tt.distance == doctest::Approx(lp).epsilon(1e-6));
        // brute-force assignment oracle for the truncated path
        std::vector<std::vector<double>> cost(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double r2 = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const double t = a.point(i)[k] - b.point(j)[k];
                    r2 += t * t;
                }
                cost[i][j] = std::min(std::sqrt(r2), 2.0);
            }
        CHECK(tt.distance == doctest::Approx(oracles::brute_assignment(cost) / n).epsilon(1e-9));
    }
}

TEST_CASE("truncated transport rejects mismatched inputs") {
    FMOptions trunc;
    trunc.method = FMMethod::truncated_transport;
    const auto a = random_measure(2, 3, 1.0, 1, true);
    const auto b = random_measure(2, 4, 1.0, 2, true);
    CHECK_THROWS_AS(fortet_mourier(a, b, trunc), usage_error);
    const auto c = random_measure(2, 3, 1.0, 3, false);
    CHECK_THROWS_AS(fortet_mourier(a, c, trunc), usage_error);
}

TEST_CASE("exact-lp equals 1-Wasserstein for small-diameter supports") {
    // supports inside a ball of radius <= 1 -> diameter <= 2: the cap is slack
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 2 + static_cast<int>(seed % 4);
        const auto a = random_measure(2, n, 0.49, 800 + seed, true);
        const auto b = random_measure(2, n, 0.49, 900 + seed, true);
        std::vector<std::vector<double>> cost(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double r2 = 0.0;
                for (int k = 0; k < 2; ++k) {
                    const double t = a.point(i)[k] - b.point(j)[k];
                    r2 += t * t;
                }
                cost[i][j] = std::sqrt(r2); // plain distance, no truncation
            }
        const double w1 = oracles::brute_assignment(cost) / n;
        CHECK(fortet_mourier(a, b).distance == doctest::Approx(w1).epsilon(1e-8));
        CHECK(fortet_mourier(a, b).distance <= w1 + 1e-9); // d_FM <= W1 in general
    }
}

TEST_CASE("subsampling kicks in above the atom cap and is flagged") {
    const auto a = random_measure(2, 40, 1.0, 11, true);
    const auto b = random_measure(2, 40, 1.0, 12, true);
    FMOptions opts;
    opts.max_atoms = 16;
    opts.subsample_seed = 5;
    const auto res = fortet_mourier(a, b, opts);
    CHECK(res.subsampled);
    CHECK(res.method == "exact-lp-subsampled");
    CHECK(res.distance >= 0.0);
    CHECK(res.distance <= 2.0);
    // seed-controlled: same options give the same estimate
    CHECK(fortet_mourier(a, b, opts).distance == res.distance);
}

TEST_CASE("radial cdf of the uniform ball and the quartic ring") {
    const double rstar = std::pow(0.5, 1.0 / 3.0);
    const auto ball = RadialDensity::uniform_ball(3, rstar);
    const auto cdf = radial_cdf_of_density(ball);
    CHECK(cdf(rstar / 2.0) == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(cdf(0.0) == doctest::Approx(0.0));
    CHECK(cdf(10.0) == doctest::Approx(1.0));
    CHECK(cdf.quantile(0.125) == doctest::Approx(rstar / 2.0).epsilon(1e-9));

    RadialDensity ring;
    ring.d = 3;
    ring.r0 = 0.0;
    ring.R0 = std::pow(4.0, -0.2);
    ring.M = [](double r) { return 5.0 * r * r / std::numbers::pi; };
    const auto rcdf = radial_cdf_of_density(ring);
    for (double r : {0.2, 0.4, 0.6})
        CHECK(rcdf(r) == doctest::Approx(4.0 * std::pow(r, 5.0)).epsilon(1e-9));
}

TEST_CASE("radial KS statistic") {
    const auto ball = RadialDensity::uniform_ball(3, 1.0);
    const auto cdf = radial_cdf_of_density(ball);

    // inverse-transform draws follow the law
    auto rng = make_rng(17, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 10000;
    Configuration c(3, n);
    for (int i = 0; i < n; ++i) {
        const double r = cdf.quantile(unif(rng));
        double norm = 0.0;
        auto p = c.point(i);
        for (int k = 0; k < 3; ++k) {
            p[k] = gauss(rng);
            norm += p[k] * p[k];
        }
        norm = std::sqrt(norm);
        for (int k = 0; k < 3; ++k) p[k] *= r / norm;
    }
    CHECK(radial_ks(c, cdf) < 0.02);

    // rotation invariance (rotate in the xy-plane)
    Configuration rot = c;
    const double ct = std::cos(0.7), st = std::sin(0.7);
    for (int i = 0; i < n; ++i) {
        auto p = rot.point(i);
        const double x = p[0], y = p[1];
        p[0] = ct * x - st * y;
        p[1] = st * x + ct * y;
    }
    CHECK(radial_ks(rot, cdf) == doctest::Approx(radial_ks(c, cdf)).epsilon(1e-12));

    // all mass at a radius where F = 0
    Configuration at0(3, 5);
    CHECK(radial_ks(at0, cdf) == doctest::Approx(1.0));
}

TEST_CASE("max radius") {
    Configuration c(3, 1);
    c.point(0)[2] = 2.0;
    CHECK(max_radius(c) == doctest::Approx(2.0));
}
