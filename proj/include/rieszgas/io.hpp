#ifndef RIESZGAS_IO_HPP
#define RIESZGAS_IO_HPP

#include <string>
#include <vector>

#include "rieszgas/equilibrium.hpp"
#include "rieszgas/model.hpp"
#include "rieszgas/sampler.hpp"

namespace rieszgas {

/// %.17g (shortest exact round-trip for doubles in practice).
std::string format_double(double x);

/// Header "x1,...,xd", one particle per row.
void write_snapshot_csv(const std::string& path, const Configuration& config);
Configuration read_snapshot_csv(const std::string& path);

/// Columns sweep,beta_N,energy,accept_rate_rw,accept_rate_mala,max_radius.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

/// Columns r,density,cumulative_mass on an equispaced grid over [r0, R0].
void write_density_csv(const std::string& path, const RadialDensity& density,
                       int grid_points = 512);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace rieszgas

#endif
