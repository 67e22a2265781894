#ifndef RIESZGAS_CONFIG_HPP
#define RIESZGAS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rieszgas/errors.hpp"

namespace rieszgas {

/// Flat INI-style experiment description. Parsing is strict: unknown
/// sections or keys raise config_error so typos cannot silently change a
/// long run.
struct ExperimentConfig {
    // [model]
    int d = 3;
    std::string kernel = "coulomb"; // coulomb | riesz
    double alpha = 2.0;             // riesz only
    std::string field = "quadratic"; // quadratic | power | table
    double field_power = 2.0;        // field = power
    std::string field_table;         // field = table: CSV path (r,V)
    double beta = 1.0;
    int n = 100;
    std::string schedule = "n_squared"; // n_squared | fixed
    double schedule_beta_n = 1.0;       // schedule = fixed

    // [sampler]
    std::string algorithm = "mala"; // rw | mala | em
    double step_size = 0.05;
    bool adapt = true;
    double target_accept = 0.0; // 0 -> algorithm default
    long sweeps = 1000;
    long burnin = 100;
    long thinning = 1;
    std::uint64_t seed = 1;
    std::string init = "uniform_ball"; // uniform_ball | gibbs | stratified
    double init_radius = 1.0;
    double init_box = 2.0; // stratified/gibbs box [-L, L]^d
    double em_dt = 1e-3;
    double em_alpha = 1.0;
    double grad_cap = 1e8;

    // [prescribe]
    std::string target = "uniform_ball";
    double target_radius = 1.0;
    double prescribe_alpha = 2.0;
    double prescribe_r = 2.0; // support bound R of Corollary-style hinge
    long prescribe_mc_budget = 200000;
    int prescribe_grid = 512;

    // [study]
    std::vector<int> n_list = {50, 100, 200, 400};

    // [output]
    std::string out_dir = ".";

    // [diagnostics]
    bool diag_ks = true;
    bool diag_fm = true;
    int fm_max_atoms = 500;

    /// Canonical round-trip serialization (every key, fixed order).
    std::string serialize() const;

    /// FNV-1a 64-bit hash of the canonical serialization, hex encoded.
    std::string digest() const;

    /// Range checks beyond parse-time type checks.
    void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

} // namespace rieszgas

#endif
