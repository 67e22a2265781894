#ifndef RIESZGAS_SAMPLER_HPP
#define RIESZGAS_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "rieszgas/energy.hpp"
#include "rieszgas/model.hpp"
#include "rieszgas/partition.hpp"

namespace rieszgas {

/// Inverse-temperature schedule beta_N.
struct AnnealSchedule {
    enum class Kind { n_squared, fixed, custom };
    Kind kind = Kind::n_squared;
    double fixed_value = 1.0;
    std::function<double(int)> custom;

    static AnnealSchedule n_squared() { return {}; }
    static AnnealSchedule fixed(double beta_n);
    static AnnealSchedule make_custom(std::function<double(int)> fn);

    double operator()(int N) const;
};

enum class Algorithm { random_walk, mala, euler_maruyama };

struct InitStrategy {
    enum class Kind { uniform_ball, gibbs_field, stratified };
    Kind kind = Kind::uniform_ball;
    double radius = 1.0;        // uniform_ball
    std::optional<Box> box;     // gibbs_field bounding box / stratified cells
    DensityFn density;          // stratified; empty -> uniform on the box
};

struct SamplerParams {
    Algorithm algorithm = Algorithm::random_walk;
    double step_size = 0.1;      // proposal std dev sigma (tau = sigma^2/2 for MALA)
    bool adapt = true;           // Robbins-Monro on log sigma during burn-in
    double target_accept = 0.0;  // 0 -> per-algorithm default (0.234 rw, 0.574 mala)
    long sweeps = 0;
    long burnin = 0;
    long thinning = 1;
    std::uint64_t seed = 0;
    InitStrategy init;
    double em_dt = 1e-3;         // euler_maruyama only
    double em_alpha = 1.0;
    double grad_cap = 1e8;       // MALA falls back to a random walk above this

    void validate() const;
};

struct ChainState {
    Configuration config;
    double energy = 0.0; // cached H_N
    double beta_n = 1.0;
    std::mt19937_64 rng;
    std::vector<double> grad;   // cached grad H_N at config (when grad_valid)
    bool grad_valid = false;
    long rw_proposed = 0, rw_accepted = 0;
    long mala_proposed = 0, mala_accepted = 0;
    long grad_fallbacks = 0;

    double accept_rate_rw() const {
        return rw_proposed ? static_cast<double>(rw_accepted) / rw_proposed : 0.0;
    }
    double accept_rate_mala() const {
        return mala_proposed ? static_cast<double>(mala_accepted) / mala_proposed : 0.0;
    }
};

/// Initial configuration. uniform_ball: i.i.d. uniform in a centered ball;
/// gibbs_field: i.i.d. proportional to e^{-V} by rejection in a bounding
/// box; stratified: one uniform point in each cell of an equal-mass
/// partition of the box.
Configuration init_configuration(int N, const GasModel& model, const InitStrategy& strategy,
                                 std::uint64_t seed);

ChainState make_chain_state(Configuration config, const GasModel& model, double beta_n,
                            std::uint64_t seed);

/// One sweep of N single-particle Gaussian random-walk proposals, each
/// accepted with probability min(1, exp(-beta_N * delta)).
void metropolis_sweep(ChainState& state, const GasModel& model, double sigma);

/// One joint MALA update with tau = sigma^2/2 on the log-density
/// -beta_N H_N. Near-singular gradients (above grad_cap) fall back to a
/// plain random-walk proposal for the step.
void mala_step(ChainState& state, const GasModel& model, double sigma, double grad_cap = 1e8);

/// Unadjusted Euler scheme X <- X - alpha_N grad H_N dt + sqrt(2 alpha_N
/// dt / beta_N) xi. Biased (no Metropolis correction); throws
/// numerical_error if a step leaves the finite domain.
void euler_maruyama_step(ChainState& state, const GasModel& model, double alpha_n,
                         double beta_n, double dt);

/// Metropolis accept/reject for a move with log acceptance ratio
/// `log_ratio`; exposed for direct testing of the rule.
bool metropolis_accept(std::mt19937_64& rng, double log_ratio);

struct TraceRow {
    long sweep = 0;
    double beta_n = 0.0;
    double energy = 0.0;
    double accept_rate_rw = 0.0;
    double accept_rate_mala = 0.0;
    double max_radius = 0.0;
};

using Observer = std::function<void(const ChainState&, long sweep)>;

struct RunResult {
    std::vector<TraceRow> trace;
    ChainState final_state;
    double adapted_step = 0.0;
};

/// Burn-in (with optional step adaptation, frozen afterwards) followed by
/// `sweeps` sweeps recorded every `thinning` strides.
RunResult run_chain(const GasModel& model, int N, const AnnealSchedule& schedule,
                    const SamplerParams& params, const std::vector<Observer>& observers = {});

/// Same, but resuming from an explicit initial configuration (e.g. a saved
/// snapshot or a draw from a known radial law); params.init is ignored.
RunResult run_chain(const GasModel& model, Configuration init, const AnnealSchedule& schedule,
                    const SamplerParams& params, const std::vector<Observer>& observers = {});

} // namespace rieszgas

#endif
