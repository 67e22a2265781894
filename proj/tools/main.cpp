#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "commands.hpp"
#include "rieszgas/errors.hpp"

using rieszgas::ExperimentConfig;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "experiment config file (INI)");
    sub->add_option("--seed", opts.seed, "override the config seed");
    sub->add_option("--out", opts.out_dir, "override the output directory");
    sub->add_option("--threads", opts.threads, "OpenMP thread count (0 = default)");
}

ExperimentConfig resolve(const CommonOpts& opts) {
    ExperimentConfig cfg = opts.config_path.empty()
                               ? ExperimentConfig{}
                               : rieszgas::load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
#ifdef _OPENMP
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confined particle-gas sampler and equilibrium toolkit"};
    app.require_subcommand(1);

    CommonOpts sample_o, equil_o, presc_o, study_o, diag_o;
    std::string snapshot_path;

    auto* sample = app.add_subcommand("sample", "run a chain; write trace/snapshot/diagnostics");
    add_common(sample, sample_o);
    auto* equil = app.add_subcommand("equilibrium", "solve the radial Coulomb equilibrium");
    add_common(equil, equil_o);
    auto* presc = app.add_subcommand("prescribe", "build a field with a prescribed equilibrium");
    add_common(presc, presc_o);
    auto* study = app.add_subcommand("convergence-study", "run a chain per N and tabulate diagnostics");
    add_common(study, study_o);
    auto* diag = app.add_subcommand("diagnose", "recompute diagnostics from a snapshot CSV");
    add_common(diag, diag_o);
    diag->add_option("--snapshot", snapshot_path, "snapshot CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sample->parsed()) rieszgas::cli::cmd_sample(resolve(sample_o));
        if (equil->parsed()) rieszgas::cli::cmd_equilibrium(resolve(equil_o));
        if (presc->parsed()) rieszgas::cli::cmd_prescribe(resolve(presc_o));
        if (study->parsed()) rieszgas::cli::cmd_convergence_study(resolve(study_o));
        if (diag->parsed()) rieszgas::cli::cmd_diagnose(resolve(diag_o), snapshot_path);
    } catch (const rieszgas::config_error& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rieszgas::usage_error& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rieszgas::unsupported_model_error& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
