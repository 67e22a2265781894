#include "rieszgas/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rieszgas/errors.hpp"
#include "rieszgas/quadrature.hpp"

namespace rieszgas {

std::string format_double(double x) {
    char buf[40];
    snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("io: cannot write " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("io: cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_snapshot_csv(const std::string& path, const Configuration& config) {
    std::ostringstream os;
    for (int k = 0; k < config.d; ++k) os << (k ? "," : "") << "x" << (k + 1);
    os << "\n";
    for (int i = 0; i < config.size(); ++i) {
        auto p = config.point(i);
        for (int k = 0; k < config.d; ++k) os << (k ? "," : "") << format_double(p[k]);
        os << "\n";
    }
    write_text_file(path, os.str());
}

Configuration read_snapshot_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("io: cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw usage_error("io: empty snapshot " + path);
    int d = 1;
    for (char c : line)
        if (c == ',') ++d;
    std::vector<double> coords;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int got = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                coords.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw usage_error("io: bad number in " + path + " row " + std::to_string(row));
            }
            ++got;
        }
        if (got != d)
            throw usage_error("io: ragged row in " + path + " row " + std::to_string(row));
    }
    if (coords.empty()) throw usage_error("io: snapshot has no particles: " + path);
    Configuration config(d, static_cast<int>(coords.size()) / d);
    config.coords = std::move(coords);
    return config;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
    std::ostringstream os;
    os << "sweep,beta_N,energy,accept_rate_rw,accept_rate_mala,max_radius\n";
    for (const auto& row : trace)
        os << row.sweep << ',' << format_double(row.beta_n) << ','
           << format_double(row.energy) << ',' << format_double(row.accept_rate_rw) << ','
           << format_double(row.accept_rate_mala) << ',' << format_double(row.max_radius)
           << "\n";
    write_text_file(path, os.str());
}

void write_density_csv(const std::string& path, const RadialDensity& density,
                       int grid_points) {
    if (grid_points < 2) throw usage_error("io: density grid too small");
    const double sd = sphere_surface(density.d);
    const int dd = density.d;
    auto M = density.M;
    auto shell = [&](double t) { return sd * M(t) * std::pow(t, dd - 1); };
    std::ostringstream os;
    os << "r,density,cumulative_mass\n";
    double cum = 0.0, prev = density.r0;
    for (int i = 0; i < grid_points; ++i) {
        const double r = density.r0 + (density.R0 - density.r0) * i / (grid_points - 1);
        if (r > prev) {
            cum += integrate(shell, prev, r, 1e-12, 1e-12).value;
            prev = r;
        }
        os << format_double(r) << ',' << format_double(M(r)) << ','
           << format_double(std::min(cum, 1.0)) << "\n";
    }
    write_text_file(path, os.str());
}

} // namespace rieszgas
