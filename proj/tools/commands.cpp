#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "rieszgas/equilibrium.hpp"
#include "rieszgas/io.hpp"
#include "rieszgas/measures.hpp"
#include "rieszgas/rng.hpp"
#include "rieszgas/sampler.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace rieszgas::cli {

namespace {

ExternalField make_field(const ExperimentConfig& cfg) {
    if (cfg.field == "quadratic") return ExternalField::quadratic(cfg.d);
    if (cfg.field == "power") return ExternalField::power(cfg.d, cfg.field_power);
    // field = table: CSV with optional "r,V" header
    const std::string text = read_text_file(cfg.field_table);
    std::stringstream ss(text);
    std::string line;
    std::vector<double> rs, vs;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw config_error("field table: expected two columns in " + cfg.field_table);
        try {
            rs.push_back(std::stod(line.substr(0, comma)));
            vs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            if (rs.empty() && vs.empty()) continue; // header row
            throw config_error("field table: bad number in " + cfg.field_table);
        }
    }
    return ExternalField::tabulated_radial(cfg.d, std::move(rs), std::move(vs));
}

GasModel make_model(const ExperimentConfig& cfg) {
    KernelSpec kernel = cfg.kernel == "riesz" ? KernelSpec::riesz(cfg.d, cfg.alpha)
                                              : KernelSpec::coulomb(cfg.d);
    return GasModel(kernel, make_field(cfg), cfg.beta);
}

AnnealSchedule make_schedule(const ExperimentConfig& cfg) {
    if (cfg.schedule == "fixed") return AnnealSchedule::fixed(cfg.schedule_beta_n);
    return AnnealSchedule::n_squared();
}

SamplerParams make_params(const ExperimentConfig& cfg) {
    SamplerParams p;
    p.algorithm = cfg.algorithm == "rw"     ? Algorithm::random_walk
                  : cfg.algorithm == "mala" ? Algorithm::mala
                                            : Algorithm::euler_maruyama;
    p.step_size = cfg.step_size;
    p.adapt = cfg.adapt;
    p.target_accept = cfg.target_accept;
    p.sweeps = cfg.sweeps;
    p.burnin = cfg.burnin;
    p.thinning = cfg.thinning;
    p.seed = cfg.seed;
    p.em_dt = cfg.em_dt;
    p.em_alpha = cfg.em_alpha;
    p.grad_cap = cfg.grad_cap;
    if (cfg.init == "uniform_ball") {
        p.init.kind = InitStrategy::Kind::uniform_ball;
        p.init.radius = cfg.init_radius;
    } else {
        p.init.kind = cfg.init == "gibbs" ? InitStrategy::Kind::gibbs_field
                                          : InitStrategy::Kind::stratified;
        p.init.box = Box(std::vector<double>(cfg.d, -cfg.init_box),
                         std::vector<double>(cfg.d, cfg.init_box));
    }
    return p;
}

fs::path ensure_out_dir(const ExperimentConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

/// i.i.d. sample of n points from a radial density (quantile radius +
/// uniform direction), as an atomic measure with uniform weights.
DiscreteMeasure sample_radial(const RadialDensity& density, int n, std::uint64_t seed) {
    const RadialCDF cdf = radial_cdf_of_density(density);
    auto rng = make_rng(seed, 99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    DiscreteMeasure m;
    m.d = density.d;
    m.weights.assign(n, 1.0 / n);
    m.points.resize(static_cast<std::size_t>(n) * density.d);
    for (int i = 0; i < n; ++i) {
        double norm = 0.0;
        std::vector<double> dir(density.d);
        for (int k = 0; k < density.d; ++k) {
            dir[k] = gauss(rng);
            norm += dir[k] * dir[k];
        }
        norm = std::max(std::sqrt(norm), 1e-300);
        const double r = cdf.quantile(unif(rng));
        for (int k = 0; k < density.d; ++k)
            m.points[static_cast<std::size_t>(i) * density.d + k] = r * dir[k] / norm;
    }
    return m;
}

std::optional<EquilibriumResult> try_solve_equilibrium(const ExperimentConfig& cfg,
                                                       const GasModel& model) {
    if (cfg.kernel != "coulomb" || cfg.d < 3 || !model.field.is_radial())
        return std::nullopt;
    try {
        return solve_radial_coulomb(cfg.d, model.field, cfg.beta);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

json diagnostics_json(const ExperimentConfig& cfg, const GasModel& model,
                      const Configuration& config) {
    json j;
    j["seed"] = cfg.seed;
    j["config_digest"] = cfg.digest();
    j["n"] = config.size();
    j["d"] = config.d;
    j["max_radius"] = max_radius(config);
    const auto eq = try_solve_equilibrium(cfg, model);
    if (eq && cfg.diag_ks) {
        j["ks"] = radial_ks(config, radial_cdf_of_density(eq->density));
    } else {
        j["ks"] = nullptr;
    }
    if (eq && cfg.diag_fm) {
        const auto ref = sample_radial(eq->density, config.size(), cfg.seed);
        FMOptions opts;
        opts.max_atoms = cfg.fm_max_atoms;
        opts.subsample_seed = cfg.seed;
        const auto fm = fortet_mourier(empirical_measure(config), ref, opts);
        j["fm_distance"] = fm.distance;
        j["fm_method"] = fm.method;
    } else {
        j["fm_distance"] = nullptr;
        j["fm_method"] = nullptr;
    }
    return j;
}

void write_json_file(const fs::path& path, const json& j) {
    write_text_file(path.string(), j.dump(2) + "\n");
}

} // namespace

void cmd_sample(const ExperimentConfig& cfg) {
    const GasModel model = make_model(cfg);
    const auto dir = ensure_out_dir(cfg);
    const auto result = run_chain(model, cfg.n, make_schedule(cfg), make_params(cfg));

    write_trace_csv((dir / "trace.csv").string(), result.trace);
    write_snapshot_csv((dir / "snapshot.csv").string(), result.final_state.config);
    write_text_file((dir / "config.ini").string(), cfg.serialize());

    json j = diagnostics_json(cfg, model, result.final_state.config);
    j["beta_n"] = result.final_state.beta_n;
    j["energy"] = result.final_state.energy;
    j["accept_rate_rw"] = result.final_state.accept_rate_rw();
    j["accept_rate_mala"] = result.final_state.accept_rate_mala();
    j["grad_fallbacks"] = result.final_state.grad_fallbacks;
    j["adapted_step"] = result.adapted_step;
    write_json_file(dir / "diagnostics.json", j);
}

void cmd_equilibrium(const ExperimentConfig& cfg) {
    if (cfg.kernel != "coulomb")
        throw unsupported_model_error("equilibrium: closed form needs the Coulomb kernel");
    if (cfg.d < 3) throw unsupported_model_error("equilibrium: closed form needs d >= 3");
    const GasModel model = make_model(cfg);
    if (!model.field.is_radial())
        throw unsupported_model_error("equilibrium: field must be radial");
    const auto dir = ensure_out_dir(cfg);
    const auto eq = solve_radial_coulomb(cfg.d, model.field, cfg.beta);

    write_density_csv((dir / "density.csv").string(), eq.density);

    std::vector<double> grid;
    for (int i = 0; i < 200; ++i)
        grid.push_back(1.5 * eq.density.R0 * (i + 1) / 200.0);
    const auto res = euler_lagrange_residual(eq.density, model, grid);

    json j;
    j["seed"] = cfg.seed;
    j["config_digest"] = cfg.digest();
    j["d"] = cfg.d;
    j["beta"] = cfg.beta;
    j["r0"] = eq.density.r0;
    j["R0"] = eq.density.R0;
    j["robin_constant"] = eq.robin_constant;
    if (eq.ball_radius)
        j["ball_radius"] = *eq.ball_radius;
    else
        j["ball_radius"] = nullptr;
    j["residual"] = {{"on_support_max_dev", res.on_support_max_dev},
                     {"off_support_min_excess", res.off_support_min_excess},
                     {"fitted_C", res.fitted_C}};
    write_json_file(dir / "summary.json", j);
}

void cmd_prescribe(const ExperimentConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const auto target = RadialDensity::uniform_ball(cfg.d, cfg.target_radius);
    const auto field = prescribed_field(target, cfg.prescribe_alpha, cfg.d, cfg.prescribe_r,
                                        cfg.prescribe_mc_budget, cfg.seed);

    // table r -> V covering well past the hinge radius sqrt(R)
    const double r_max = 2.0 * std::sqrt(cfg.prescribe_r);
    std::ostringstream os;
    os << "r,V\n";
    for (int i = 0; i < cfg.prescribe_grid; ++i) {
        const double r = r_max * i / (cfg.prescribe_grid - 1);
        os << format_double(r) << ',' << format_double(field.v(r)) << "\n";
    }
    write_text_file((dir / "field_table.csv").string(), os.str());

    // optimality grid: g(r) = U(r) + V(r) - C with C = g on the support
    const int gn = 200;
    std::vector<double> x(cfg.d, 0.0);
    auto g = [&](double r) {
        x[0] = r;
        const auto u = riesz_potential_estimate(target, cfg.prescribe_alpha,
                                                std::span<const double>(x),
                                                cfg.prescribe_mc_budget, cfg.seed);
        return u.value + field.v(r);
    };
    const double C = g(0.5 * target.R0);
    double on_dev = 0.0, off_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= gn; ++i) {
        const double r = r_max * i / gn;
        const double excess = g(r) - C;
        if (r <= target.R0)
            on_dev = std::max(on_dev, std::abs(excess));
        else
            off_min = std::min(off_min, excess);
    }

    json j;
    j["seed"] = cfg.seed;
    j["config_digest"] = cfg.digest();
    j["alpha"] = cfg.prescribe_alpha;
    j["R"] = cfg.prescribe_r;
    j["target_radius"] = cfg.target_radius;
    j["V_at_0"] = field.v(0.0);
    j["C"] = C;
    j["on_support_max_dev"] = on_dev;
    j["off_support_min_excess"] = off_min;
    write_json_file(dir / "optimality.json", j);
}

void cmd_convergence_study(const ExperimentConfig& cfg) {
    const GasModel model = make_model(cfg);
    const auto eq = try_solve_equilibrium(cfg, model);
    if (!eq)
        throw unsupported_model_error("convergence-study: needs a radial Coulomb model");
    const auto dir = ensure_out_dir(cfg);
    const RadialCDF cdf = radial_cdf_of_density(eq->density);

    std::ostringstream os;
    os << "N,ks,fm_distance,max_radius\n";
    json rows = json::array();
    for (int n : cfg.n_list) {
        ExperimentConfig run = cfg;
        run.n = n;
        const auto result = run_chain(model, n, make_schedule(run), make_params(run));
        const auto& config = result.final_state.config;
        const double ks = radial_ks(config, cdf);
        FMOptions opts;
        opts.max_atoms = cfg.fm_max_atoms;
        opts.subsample_seed = cfg.seed;
        const auto fm = fortet_mourier(empirical_measure(config),
                                       sample_radial(eq->density, n, cfg.seed), opts);
        const double mr = max_radius(config);
        os << n << ',' << format_double(ks) << ',' << format_double(fm.distance) << ','
           << format_double(mr) << "\n";
        rows.push_back({{"N", n},
                        {"ks", ks},
                        {"fm_distance", fm.distance},
                        {"fm_method", fm.method},
                        {"max_radius", mr}});
    }
    write_text_file((dir / "study.csv").string(), os.str());

    json j;
    j["seed"] = cfg.seed;
    j["config_digest"] = cfg.digest();
    j["rows"] = rows;
    write_json_file(dir / "study.json", j);
}

void cmd_diagnose(const ExperimentConfig& cfg, const std::string& snapshot_path) {
    const GasModel model = make_model(cfg);
    const Configuration config = read_snapshot_csv(snapshot_path);
    if (config.d != cfg.d)
        throw usage_error("diagnose: snapshot dimension does not match the config");
    const auto dir = ensure_out_dir(cfg);
    json j = diagnostics_json(cfg, model, config);
    j["snapshot"] = snapshot_path;
    write_json_file(dir / "diagnostics.json", j);
}

} // namespace rieszgas::cli
