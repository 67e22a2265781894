#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rieszgas/energy.hpp"
#include "rieszgas/equilibrium.hpp"
#include "rieszgas/io.hpp"
#include "rieszgas/measures.hpp"
#include "rieszgas/partition.hpp"
#include "rieszgas/sampler.hpp"

namespace py = pybind11;
using namespace rieszgas;

namespace {

Configuration config_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 2) throw usage_error("configuration array must be N x d");
    const int n = static_cast<int>(arr.shape(0));
    const int d = static_cast<int>(arr.shape(1));
    Configuration c(d, n);
    std::copy(arr.data(), arr.data() + static_cast<std::size_t>(n) * d, c.coords.begin());
    if (!c.finite()) throw usage_error("configuration array must be finite");
    return c;
}

py::array_t<double> config_to_array(const Configuration& c) {
    py::array_t<double> arr({c.size(), c.d});
    std::copy(c.coords.begin(), c.coords.end(), arr.mutable_data());
    return arr;
}

GasModel make_model(int d, const std::string& kernel, double alpha, const std::string& field,
                    double field_power, double beta) {
    KernelSpec k = kernel == "riesz" ? KernelSpec::riesz(d, alpha) : KernelSpec::coulomb(d);
    ExternalField f = field == "power" ? ExternalField::power(d, field_power)
                                       : ExternalField::quadratic(d);
    return GasModel(k, std::move(f), beta);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Confined particle-gas sampling and equilibrium measures";

    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<unsupported_model_error>(m, "UnsupportedModelError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<singularity_error>(m, "SingularityError", PyExc_RuntimeError);

    py::class_<GasModel>(m, "GasModel")
        .def(py::init(&make_model), py::arg("d"), py::arg("kernel") = "coulomb",
             py::arg("alpha") = 2.0, py::arg("field") = "quadratic",
             py::arg("field_power") = 2.0, py::arg("beta") = 1.0)
        .def_property_readonly("d", &GasModel::dimension)
        .def_readonly("beta", &GasModel::beta);

    m.def(
        "total_energy",
        [](py::array_t<double> arr, const GasModel& model, bool deterministic) {
            return total_energy(config_from_array(arr), model,
                                deterministic ? SumMode::deterministic : SumMode::fast);
        },
        py::arg("config"), py::arg("model"), py::arg("deterministic") = false);

    m.def(
        "energy_gradient",
        [](py::array_t<double> arr, const GasModel& model) {
            Configuration c = config_from_array(arr);
            std::vector<double> g(c.coords.size());
            energy_gradient(c, model, g);
            py::array_t<double> out({c.size(), c.d});
            std::copy(g.begin(), g.end(), out.mutable_data());
            return out;
        },
        py::arg("config"), py::arg("model"));

    m.def(
        "energy_delta",
        [](py::array_t<double> arr, const GasModel& model, int i, std::vector<double> newpos) {
            return energy_delta(config_from_array(arr), model, i, newpos);
        },
        py::arg("config"), py::arg("model"), py::arg("i"), py::arg("newpos"));

    py::class_<RadialDensity>(m, "RadialDensity")
        .def_readonly("d", &RadialDensity::d)
        .def_readonly("r0", &RadialDensity::r0)
        .def_readonly("R0", &RadialDensity::R0)
        .def("__call__", [](const RadialDensity& rd, double r) { return rd.M(r); })
        .def("mass", [](const RadialDensity& rd) { return rd.mass(); })
        .def_static("uniform_ball", &RadialDensity::uniform_ball, py::arg("d"),
                    py::arg("radius"));

    py::class_<EquilibriumResult>(m, "EquilibriumResult")
        .def_readonly("density", &EquilibriumResult::density)
        .def_readonly("robin_constant", &EquilibriumResult::robin_constant)
        .def_readonly("ball_radius", &EquilibriumResult::ball_radius)
        .def_readonly("beta", &EquilibriumResult::beta);

    m.def(
        "solve_radial_coulomb",
        [](int d, const std::string& field, double field_power, double beta) {
            ExternalField f = field == "power" ? ExternalField::power(d, field_power)
                                               : ExternalField::quadratic(d);
            return solve_radial_coulomb(d, f, beta);
        },
        py::arg("d"), py::arg("field") = "quadratic", py::arg("field_power") = 2.0,
        py::arg("beta") = 1.0);

    m.def("uniform_ball_radius", &uniform_ball_radius, py::arg("d"), py::arg("beta"));

    m.def(
        "radial_coulomb_potential",
        [](const RadialDensity& rd, double r) { return radial_coulomb_potential(rd, r); },
        py::arg("density"), py::arg("r"));

    py::class_<RunResult>(m, "RunResult")
        .def_property_readonly(
            "trace",
            [](const RunResult& r) {
                py::list rows;
                for (const auto& t : r.trace)
                    rows.append(py::dict(
                        py::arg("sweep") = t.sweep, py::arg("beta_n") = t.beta_n,
                        py::arg("energy") = t.energy, py::arg("accept_rate_rw") = t.accept_rate_rw,
                        py::arg("accept_rate_mala") = t.accept_rate_mala,
                        py::arg("max_radius") = t.max_radius));
                return rows;
            })
        .def_property_readonly(
            "final_config", [](const RunResult& r) { return config_to_array(r.final_state.config); })
        .def_property_readonly("energy", [](const RunResult& r) { return r.final_state.energy; })
        .def_property_readonly("accept_rate_rw",
                               [](const RunResult& r) { return r.final_state.accept_rate_rw(); })
        .def_property_readonly("accept_rate_mala",
                               [](const RunResult& r) { return r.final_state.accept_rate_mala(); })
        .def_readonly("adapted_step", &RunResult::adapted_step);

    m.def(
        "run_chain",
        [](const GasModel& model, int n, const std::string& algorithm, double step_size,
           long sweeps, long burnin, long thinning, std::uint64_t seed, bool adapt,
           double beta_n, double init_radius) {
            SamplerParams p;
            p.algorithm = algorithm == "rw"     ? Algorithm::random_walk
                          : algorithm == "mala" ? Algorithm::mala
                                                : Algorithm::euler_maruyama;
            p.step_size = step_size;
            p.sweeps = sweeps;
            p.burnin = burnin;
            p.thinning = thinning;
            p.seed = seed;
            p.adapt = adapt;
            p.init.radius = init_radius;
            const AnnealSchedule sched =
                beta_n > 0.0 ? AnnealSchedule::fixed(beta_n) : AnnealSchedule::n_squared();
            return run_chain(model, n, sched, p);
        },
        py::arg("model"), py::arg("n"), py::arg("algorithm") = "mala",
        py::arg("step_size") = 0.05, py::arg("sweeps") = 1000, py::arg("burnin") = 100,
        py::arg("thinning") = 1, py::arg("seed") = 1, py::arg("adapt") = true,
        py::arg("beta_n") = 0.0, py::arg("init_radius") = 1.0);

    m.def(
        "radial_ks",
        [](py::array_t<double> arr, const RadialDensity& rd) {
            return radial_ks(config_from_array(arr), radial_cdf_of_density(rd));
        },
        py::arg("config"), py::arg("density"));

    m.def(
        "max_radius",
        [](py::array_t<double> arr) { return max_radius(config_from_array(arr)); },
        py::arg("config"));

    m.def(
        "fortet_mourier",
        [](py::array_t<double> a, std::vector<double> wa, py::array_t<double> b,
           std::vector<double> wb, const std::string& method, int max_atoms,
           std::uint64_t seed) {
            auto to_measure = [](py::array_t<double> arr, std::vector<double> w) {
                Configuration c = config_from_array(arr);
                const int n = c.size();
                DiscreteMeasure mm;
                mm.d = c.d;
                mm.points = std::move(c.coords);
                mm.weights = w.empty() ? std::vector<double>(n, 1.0 / n) : std::move(w);
                mm.validate();
                return mm;
            };
            FMOptions opts;
            opts.method = method == "truncated-transport" ? FMMethod::truncated_transport
                                                          : FMMethod::exact_lp;
            opts.max_atoms = max_atoms;
            opts.subsample_seed = seed;
            const auto res = fortet_mourier(to_measure(a, wa), to_measure(b, wb), opts);
            return py::make_tuple(res.distance, res.method);
        },
        py::arg("mu_points"), py::arg("mu_weights") = std::vector<double>{},
        py::arg("nu_points"), py::arg("nu_weights") = std::vector<double>{},
        py::arg("method") = "exact-lp", py::arg("max_atoms") = 500, py::arg("seed") = 0);

    m.def(
        "nice_partition",
        [](std::vector<double> lo, std::vector<double> hi, int n) {
            Box box(std::move(lo), std::move(hi));
            const auto cells =
                nice_partition(box, [](std::span<const double>) { return 1.0; }, n);
            py::list out;
            for (const auto& cell : cells) out.append(py::make_tuple(cell.lo, cell.hi));
            return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("n"));

    m.def(
        "prescribed_field_table",
        [](int d, double target_radius, double alpha, double R, int grid,
           std::int64_t mc_budget, std::uint64_t seed) {
            const auto target = RadialDensity::uniform_ball(d, target_radius);
            const auto field = prescribed_field(target, alpha, d, R, mc_budget, seed);
            const double r_max = 2.0 * std::sqrt(R);
            std::vector<double> rs(grid), vs(grid);
            for (int i = 0; i < grid; ++i) {
                rs[i] = r_max * i / (grid - 1);
                vs[i] = field.v(rs[i]);
            }
            return py::make_tuple(rs, vs);
        },
        py::arg("d"), py::arg("target_radius") = 1.0, py::arg("alpha") = 2.0,
        py::arg("R") = 2.0, py::arg("grid") = 512, py::arg("mc_budget") = 200000,
        py::arg("seed") = 0);
}
