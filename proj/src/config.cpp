#include "rieszgas/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rieszgas {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value for '" + key + "': " + v);
    }
}

long parse_long(const std::string& key, const std::string& v) {
    long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw config_error("config: bad integer value for '" + key + "': " + v);
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw config_error("config: bad unsigned value for '" + key + "': " + v);
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: bad boolean value for '" + key + "': " + v);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(static_cast<int>(parse_long(key, item)));
    }
    if (out.empty()) throw config_error("config: empty list for '" + key + "'");
    return out;
}

std::string fmt(double x) {
    char buf[40];
    snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config: malformed section at line " + std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            if (section != "model" && section != "sampler" && section != "prescribe" &&
                section != "study" && section != "output" && section != "diagnostics")
                throw config_error("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "model.d") cfg.d = static_cast<int>(parse_long(qual, val));
        else if (qual == "model.kernel") cfg.kernel = val;
        else if (qual == "model.alpha") cfg.alpha = parse_double(qual, val);
        else if (qual == "model.field") cfg.field = val;
        else if (qual == "model.field_power") cfg.field_power = parse_double(qual, val);
        else if (qual == "model.field_table") cfg.field_table = val;
        else if (qual == "model.beta") cfg.beta = parse_double(qual, val);
        else if (qual == "model.n") cfg.n = static_cast<int>(parse_long(qual, val));
        else if (qual == "model.schedule") cfg.schedule = val;
        else if (qual == "model.schedule_beta_n") cfg.schedule_beta_n = parse_double(qual, val);
        else if (qual == "sampler.algorithm") cfg.algorithm = val;
        else if (qual == "sampler.step_size") cfg.step_size = parse_double(qual, val);
        else if (qual == "sampler.adapt") cfg.adapt = parse_bool(qual, val);
        else if (qual == "sampler.target_accept") cfg.target_accept = parse_double(qual, val);
        else if (qual == "sampler.sweeps") cfg.sweeps = parse_long(qual, val);
        else if (qual == "sampler.burnin") cfg.burnin = parse_long(qual, val);
        else if (qual == "sampler.thinning") cfg.thinning = parse_long(qual, val);
        else if (qual == "sampler.seed") cfg.seed = parse_u64(qual, val);
        else if (qual == "sampler.init") cfg.init = val;
        else if (qual == "sampler.init_radius") cfg.init_radius = parse_double(qual, val);
        else if (qual == "sampler.init_box") cfg.init_box = parse_double(qual, val);
        else if (qual == "sampler.em_dt") cfg.em_dt = parse_double(qual, val);
        else if (qual == "sampler.em_alpha") cfg.em_alpha = parse_double(qual, val);
        else if (qual == "sampler.grad_cap") cfg.grad_cap = parse_double(qual, val);
        else if (qual == "prescribe.target") cfg.target = val;
        else if (qual == "prescribe.target_radius") cfg.target_radius = parse_double(qual, val);
        else if (qual == "prescribe.alpha") cfg.prescribe_alpha = parse_double(qual, val);
        else if (qual == "prescribe.r") cfg.prescribe_r = parse_double(qual, val);
        else if (qual == "prescribe.mc_budget") cfg.prescribe_mc_budget = parse_long(qual, val);
        else if (qual == "prescribe.grid") cfg.prescribe_grid = static_cast<int>(parse_long(qual, val));
        else if (qual == "study.n_list") cfg.n_list = parse_int_list(qual, val);
        else if (qual == "output.dir") cfg.out_dir = val;
        else if (qual == "diagnostics.ks") cfg.diag_ks = parse_bool(qual, val);
        else if (qual == "diagnostics.fm") cfg.diag_fm = parse_bool(qual, val);
        else if (qual == "diagnostics.fm_max_atoms") cfg.fm_max_atoms = static_cast<int>(parse_long(qual, val));
        else throw config_error("config: unknown key '" + qual + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void ExperimentConfig::validate() const {
    if (d < 1) throw config_error("config: model.d must be >= 1");
    if (kernel != "coulomb" && kernel != "riesz")
        throw config_error("config: model.kernel must be coulomb or riesz");
    if (kernel == "riesz" && !(alpha > 0.0 && alpha < d))
        throw config_error("config: model.alpha must lie in (0, d)");
    if (field != "quadratic" && field != "power" && field != "table")
        throw config_error("config: model.field must be quadratic, power or table");
    if (field == "table" && field_table.empty())
        throw config_error("config: model.field_table required for field = table");
    if (beta <= 0.0) throw config_error("config: model.beta must be positive");
    if (n < 1) throw config_error("config: model.n must be >= 1");
    if (schedule != "n_squared" && schedule != "fixed")
        throw config_error("config: model.schedule must be n_squared or fixed");
    if (schedule == "fixed" && schedule_beta_n <= 0.0)
        throw config_error("config: model.schedule_beta_n must be positive");
    if (algorithm != "rw" && algorithm != "mala" && algorithm != "em")
        throw config_error("config: sampler.algorithm must be rw, mala or em");
    if (step_size <= 0.0) throw config_error("config: sampler.step_size must be positive");
    if (target_accept < 0.0 || target_accept >= 1.0)
        throw config_error("config: sampler.target_accept must lie in [0, 1)");
    if (sweeps < 0 || burnin < 0) throw config_error("config: negative sweep counts");
    if (thinning < 1) throw config_error("config: sampler.thinning must be >= 1");
    if (init != "uniform_ball" && init != "gibbs" && init != "stratified")
        throw config_error("config: sampler.init must be uniform_ball, gibbs or stratified");
    if (init_radius <= 0.0 || init_box <= 0.0)
        throw config_error("config: init extents must be positive");
    if (em_dt <= 0.0) throw config_error("config: sampler.em_dt must be positive");
    if (target != "uniform_ball")
        throw config_error("config: prescribe.target must be uniform_ball");
    if (target_radius <= 0.0) throw config_error("config: prescribe.target_radius must be positive");
    if (!(prescribe_alpha > 0.0)) throw config_error("config: prescribe.alpha must be positive");
    if (prescribe_r <= 0.0) throw config_error("config: prescribe.r must be positive");
    if (prescribe_grid < 8) throw config_error("config: prescribe.grid too small");
    for (int m : n_list)
        if (m < 1) throw config_error("config: study.n_list entries must be >= 1");
    if (fm_max_atoms < 1) throw config_error("config: diagnostics.fm_max_atoms must be >= 1");
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "[model]\n";
    os << "d = " << d << "\n";
    os << "kernel = " << kernel << "\n";
    os << "alpha = " << fmt(alpha) << "\n";
    os << "field = " << field << "\n";
    os << "field_power = " << fmt(field_power) << "\n";
    os << "field_table = " << field_table << "\n";
    os << "beta = " << fmt(beta) << "\n";
    os << "n = " << n << "\n";
    os << "schedule = " << schedule << "\n";
    os << "schedule_beta_n = " << fmt(schedule_beta_n) << "\n";
    os << "\n[sampler]\n";
    os << "algorithm = " << algorithm << "\n";
    os << "step_size = " << fmt(step_size) << "\n";
    os << "adapt = " << (adapt ? "true" : "false") << "\n";
    os << "target_accept = " << fmt(target_accept) << "\n";
    os << "sweeps = " << sweeps << "\n";
    os << "burnin = " << burnin << "\n";
    os << "thinning = " << thinning << "\n";
    os << "seed = " << seed << "\n";
    os << "init = " << init << "\n";
    os << "init_radius = " << fmt(init_radius) << "\n";
    os << "init_box = " << fmt(init_box) << "\n";
    os << "em_dt = " << fmt(em_dt) << "\n";
    os << "em_alpha = " << fmt(em_alpha) << "\n";
    os << "grad_cap = " << fmt(grad_cap) << "\n";
    os << "\n[prescribe]\n";
    os << "target = " << target << "\n";
    os << "target_radius = " << fmt(target_radius) << "\n";
    os << "alpha = " << fmt(prescribe_alpha) << "\n";
    os << "r = " << fmt(prescribe_r) << "\n";
    os << "mc_budget = " << prescribe_mc_budget << "\n";
    os << "grid = " << prescribe_grid << "\n";
    os << "\n[study]\n";
    os << "n_list = ";
    for (std::size_t i = 0; i < n_list.size(); ++i)
        os << (i ? "," : "") << n_list[i];
    os << "\n";
    os << "\n[output]\n";
    os << "dir = " << out_dir << "\n";
    os << "\n[diagnostics]\n";
    os << "ks = " << (diag_ks ? "true" : "false") << "\n";
    os << "fm = " << (diag_fm ? "true" : "false") << "\n";
    os << "fm_max_atoms = " << fm_max_atoms << "\n";
    return os.str();
}

std::string ExperimentConfig::digest() const {
    // the output location is not part of the experiment's identity
    ExperimentConfig canon = *this;
    canon.out_dir = ".";
    const std::string s = canon.serialize();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace rieszgas
