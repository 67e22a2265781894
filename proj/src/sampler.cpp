#include "rieszgas/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rieszgas/rng.hpp"

namespace rieszgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

AnnealSchedule AnnealSchedule::fixed(double beta_n) {
    if (beta_n <= 0.0) throw usage_error("schedule: beta_N must be positive");
    AnnealSchedule s;
    s.kind = Kind::fixed;
    s.fixed_value = beta_n;
    return s;
}

AnnealSchedule AnnealSchedule::make_custom(std::function<double(int)> fn) {
    AnnealSchedule s;
    s.kind = Kind::custom;
    s.custom = std::move(fn);
    return s;
}

double AnnealSchedule::operator()(int N) const {
    double b;
    switch (kind) {
        case Kind::n_squared: b = static_cast<double>(N) * N; break;
        case Kind::fixed: b = fixed_value; break;
        default: b = custom(N); break;
    }
    if (!(b > 0.0)) throw usage_error("schedule: beta_N must be positive");
    return b;
}

void SamplerParams::validate() const {
    if (step_size <= 0.0) throw usage_error("sampler: step size must be positive");
    if (sweeps < 0 || burnin < 0) throw usage_error("sampler: negative sweep counts");
    if (thinning < 1) throw usage_error("sampler: thinning stride must be >= 1");
    if (target_accept < 0.0 || target_accept >= 1.0)
        throw usage_error("sampler: target acceptance must lie in [0, 1)");
    if (algorithm == Algorithm::euler_maruyama && em_dt <= 0.0)
        throw usage_error("sampler: dt must be positive");
}

Configuration init_configuration(int N, const GasModel& model, const InitStrategy& strategy,
                                 std::uint64_t seed) {
    if (N < 1) throw usage_error("init: N must be >= 1");
    const int d = model.dimension();
    Configuration config(d, N);
    auto rng = make_rng(seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    switch (strategy.kind) {
        case InitStrategy::Kind::uniform_ball: {
            if (strategy.radius <= 0.0) throw usage_error("init: ball radius must be positive");
            for (int i = 0; i < N; ++i) {
                auto p = config.point(i);
                double norm = 0.0;
                for (int k = 0; k < d; ++k) {
                    p[k] = gauss(rng);
                    norm += p[k] * p[k];
                }
                norm = std::sqrt(norm);
                const double r = strategy.radius * std::pow(unif(rng), 1.0 / d);
                for (int k = 0; k < d; ++k) p[k] = r * p[k] / std::max(norm, 1e-300);
            }
            break;
        }
        case InitStrategy::Kind::gibbs_field: {
            Box box = strategy.box.value_or(
                Box(std::vector<double>(d, -5.0), std::vector<double>(d, 5.0)));
            if (box.dimension() != d) throw usage_error("init: box dimension mismatch");
            // envelope for rejection: min of V probed on a coarse sample
            double vmin = kInf;
            std::vector<double> probe(d);
            auto probe_rng = make_rng(seed, 17);
            for (int s = 0; s < 4096; ++s) {
                for (int k = 0; k < d; ++k) {
                    std::uniform_real_distribution<double> u(box.lo[k], box.hi[k]);
                    probe[k] = u(probe_rng);
                }
                vmin = std::min(vmin, model.field.value(probe));
            }
            const long cap = 200000;
            for (int i = 0; i < N; ++i) {
                auto p = config.point(i);
                long tries = 0;
                while (true) {
                    if (++tries > cap)
                        throw numerical_error("init: rejection sampling iteration cap hit");
                    for (int k = 0; k < d; ++k) {
                        std::uniform_real_distribution<double> u(box.lo[k], box.hi[k]);
                        p[k] = u(probe_rng);
                    }
                    const double acc = std::exp(-(model.field.value(p) - vmin));
                    if (unif(probe_rng) < acc) break;
                }
            }
            break;
        }
        case InitStrategy::Kind::stratified: {
            if (!strategy.box) throw usage_error("init: stratified requires a box");
            const Box& box = *strategy.box;
            if (box.dimension() != d) throw usage_error("init: box dimension mismatch");
            DensityFn density = strategy.density
                                    ? strategy.density
                                    : DensityFn([](std::span<const double>) { return 1.0; });
            auto cells = nice_partition(box, density, N);
            for (int i = 0; i < N; ++i) {
                auto p = config.point(i);
                for (int k = 0; k < d; ++k) {
                    std::uniform_real_distribution<double> u(cells[i].lo[k], cells[i].hi[k]);
                    p[k] = u(rng);
                }
            }
            break;
        }
    }
    return config;
}

ChainState make_chain_state(Configuration config, const GasModel& model, double beta_n,
                            std::uint64_t seed) {
    ChainState state;
    state.config = std::move(config);
    state.energy = total_energy(state.config, model, SumMode::fast);
    state.beta_n = beta_n;
    state.rng = make_rng(seed, 1);
    return state;
}

bool metropolis_accept(std::mt19937_64& rng, double log_ratio) {
    if (log_ratio >= 0.0) return true;
    if (log_ratio == -kInf) return false;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return unif(rng) < std::exp(log_ratio);
}

void metropolis_sweep(ChainState& state, const GasModel& model, double sigma) {
    const int n = state.config.size();
    const int d = state.config.d;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> proposal(d);
    for (int i = 0; i < n; ++i) {
        auto xi = state.config.point(i);
        for (int k = 0; k < d; ++k) proposal[k] = xi[k] + sigma * gauss(state.rng);
        const double delta = energy_delta(state.config, model, i, proposal);
        ++state.rw_proposed;
        if (metropolis_accept(state.rng, -state.beta_n * delta)) {
            std::copy(proposal.begin(), proposal.end(), xi.begin());
            state.energy += delta;
            ++state.rw_accepted;
        }
    }
    state.grad_valid = false;
}

void mala_step(ChainState& state, const GasModel& model, double sigma, double grad_cap) {
    const int n = state.config.size();
    const int d = state.config.d;
    const std::size_t dof = state.config.coords.size();
    std::normal_distribution<double> gauss(0.0, 1.0);

    if (!state.grad_valid) {
        state.grad.resize(dof);
        state.energy = energy_and_gradient(state.config, model, state.grad);
        if (state.energy == kInf)
            throw singularity_error("mala: coincident particles in current state");
        state.grad_valid = true;
    }

    double gmax = 0.0;
    for (double g : state.grad) gmax = std::max(gmax, std::abs(state.beta_n * g));

    if (gmax > grad_cap) {
        // near-singular drift: plain random-walk proposal for this step
        ++state.grad_fallbacks;
        ++state.rw_proposed;
        Configuration prop = state.config;
        for (std::size_t c = 0; c < dof; ++c) prop.coords[c] += sigma * gauss(state.rng);
        const double he = total_energy(prop, model, SumMode::fast);
        if (metropolis_accept(state.rng, -state.beta_n * (he - state.energy))) {
            state.config = std::move(prop);
            state.energy = he;
            state.grad_valid = false;
            ++state.rw_accepted;
        }
        return;
    }

    const double tau = 0.5 * sigma * sigma;
    const double noise = std::sqrt(2.0 * tau);
    Configuration prop = state.config;
    for (std::size_t c = 0; c < dof; ++c)
        prop.coords[c] += -tau * state.beta_n * state.grad[c] + noise * gauss(state.rng);

    ++state.mala_proposed;
    std::vector<double> gprop(dof);
    const double he = energy_and_gradient(prop, model, gprop);
    if (he == kInf) return; // lands on another particle: reject

    // q(y|x) ~ exp(-|y - x + tau beta grad(x)|^2 / 4 tau)
    double fwd = 0.0, bwd = 0.0;
    for (std::size_t c = 0; c < dof; ++c) {
        const double f = prop.coords[c] - state.config.coords[c] +
                         tau * state.beta_n * state.grad[c];
        const double b = state.config.coords[c] - prop.coords[c] +
                         tau * state.beta_n * gprop[c];
        fwd += f * f;
        bwd += b * b;
    }
    const double log_ratio =
        -state.beta_n * (he - state.energy) - (bwd - fwd) / (4.0 * tau);
    if (metropolis_accept(state.rng, log_ratio)) {
        state.config = std::move(prop);
        state.energy = he;
        state.grad = std::move(gprop);
        ++state.mala_accepted;
    }
    (void)n;
    (void)d;
}

void euler_maruyama_step(ChainState& state, const GasModel& model, double alpha_n,
                         double beta_n, double dt) {
    if (dt <= 0.0) throw usage_error("euler_maruyama: dt must be positive");
    const std::size_t dof = state.config.coords.size();
    if (!state.grad_valid) {
        state.grad.resize(dof);
        state.energy = energy_and_gradient(state.config, model, state.grad);
        if (state.energy == kInf)
            throw singularity_error("euler_maruyama: coincident particles");
        state.grad_valid = true;
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double noise = std::sqrt(2.0 * alpha_n * dt / beta_n);
    for (std::size_t c = 0; c < dof; ++c)
        state.config.coords[c] += -alpha_n * state.grad[c] * dt + noise * gauss(state.rng);
    if (!state.config.finite())
        throw numerical_error("euler_maruyama: step produced non-finite coordinates");
    state.energy = energy_and_gradient(state.config, model, state.grad);
    state.grad_valid = state.energy != kInf;
}

RunResult run_chain(const GasModel& model, int N, const AnnealSchedule& schedule,
                    const SamplerParams& params, const std::vector<Observer>& observers) {
    params.validate();
    return run_chain(model, init_configuration(N, model, params.init, params.seed),
                     schedule, params, observers);
}

RunResult run_chain(const GasModel& model, Configuration init, const AnnealSchedule& schedule,
                    const SamplerParams& params, const std::vector<Observer>& observers) {
    params.validate();
    if (params.burnin > params.sweeps && params.sweeps > 0)
        throw usage_error("run_chain: burn-in must not exceed sweeps");

    const double beta_n = schedule(init.size());
    ChainState state = make_chain_state(std::move(init), model, beta_n, params.seed);

    double sigma = params.step_size;
    double target = params.target_accept;
    if (target == 0.0)
        target = params.algorithm == Algorithm::mala ? 0.574 : 0.234;

    auto do_step = [&](long) {
        switch (params.algorithm) {
            case Algorithm::random_walk:
                metropolis_sweep(state, model, sigma);
                break;
            case Algorithm::mala:
                mala_step(state, model, sigma, params.grad_cap);
                break;
            case Algorithm::euler_maruyama:
                euler_maruyama_step(state, model, params.em_alpha, beta_n, params.em_dt);
                break;
        }
    };

    // burn-in with Robbins-Monro adaptation of log sigma, frozen afterwards
    for (long t = 0; t < params.burnin; ++t) {
        const long rwp = state.rw_proposed, rwa = state.rw_accepted;
        const long mp = state.mala_proposed, ma = state.mala_accepted;
        do_step(t);
        if (params.adapt && params.algorithm != Algorithm::euler_maruyama) {
            double rate;
            if (params.algorithm == Algorithm::random_walk) {
                const long prop = state.rw_proposed - rwp;
                rate = prop ? static_cast<double>(state.rw_accepted - rwa) / prop : target;
            } else {
                const long prop = (state.mala_proposed - mp) + (state.rw_proposed - rwp);
                const long acc = (state.mala_accepted - ma) + (state.rw_accepted - rwa);
                rate = prop ? static_cast<double>(acc) / prop : target;
            }
            const double gamma = 1.0 / std::pow(static_cast<double>(t + 1), 0.6);
            double ls = std::log(sigma) + gamma * (rate - target);
            sigma = std::exp(std::clamp(ls, -23.0, 3.0));
        }
    }

    // post-burn-in counters reflect the frozen kernel
    state.rw_proposed = state.rw_accepted = 0;
    state.mala_proposed = state.mala_accepted = 0;

    RunResult result;
    const long resync_every = 512;
    for (long t = 1; t <= params.sweeps; ++t) {
        do_step(t);
        if (t % resync_every == 0) {
            state.energy = total_energy(state.config, model, SumMode::fast);
            state.grad_valid = false;
        }
        if (t % params.thinning == 0) {
            double r2max = 0.0;
            for (int i = 0; i < state.config.size(); ++i) {
                double r2 = 0.0;
                for (double c : state.config.point(i)) r2 += c * c;
                r2max = std::max(r2max, r2);
            }
            result.trace.push_back(TraceRow{t, beta_n, state.energy,
                                            state.accept_rate_rw(),
                                            state.accept_rate_mala(),
                                            std::sqrt(r2max)});
            for (const auto& obs : observers) obs(state, t);
        }
    }
    result.adapted_step = sigma;
    result.final_state = std::move(state);
    return result;
}

} // namespace rieszgas
