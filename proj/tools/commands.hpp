#ifndef RIESZGAS_TOOLS_COMMANDS_HPP
#define RIESZGAS_TOOLS_COMMANDS_HPP

#include <string>

#include "rieszgas/config.hpp"

namespace rieszgas::cli {

void cmd_sample(const ExperimentConfig& cfg);
void cmd_equilibrium(const ExperimentConfig& cfg);
void cmd_prescribe(const ExperimentConfig& cfg);
void cmd_convergence_study(const ExperimentConfig& cfg);
void cmd_diagnose(const ExperimentConfig& cfg, const std::string& snapshot_path);

} // namespace rieszgas::cli

#endif
