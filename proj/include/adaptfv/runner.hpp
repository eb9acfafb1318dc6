#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "adaptfv/config.hpp"

namespace adaptfv {

/// Environment variable naming the root for default output directories.
inline constexpr const char* kOutputRootEnv = "ADAPTFV_OUTPUT_ROOT";

struct RunResult {
    std::size_t steps = 0;
    double t = 0.0;
    std::filesystem::path output_dir;
};

/// output_dir if set, otherwise $ADAPTFV_OUTPUT_ROOT/<name> or runs/<name>.
std::filesystem::path resolve_output_dir(const RunConfig& config);

/// Runs the adaptive scheme to t_end (or max_steps) and writes
///   summary.csv            step,t,dt,theta,total_mass,total_entropy,maincond_violations,worst_margin
///   snapshots/step_<n>.csv i,x_left,x_right,h,u,v,M_i,maincond_rhs,entropy_residual
///   run_meta.txt           the resolved configuration
/// Errors carry the failing step number.
RunResult run(const RunConfig& config, std::ostream* log = nullptr);

/// Runs independent configurations on up to `jobs` threads. Returns one
/// message per failed run (empty when all succeed).
std::vector<std::string> run_sweep(std::span<const RunConfig> configs, unsigned jobs);

/// Reads a sweep file: one config path per line, '#' comments; relative paths
/// resolve against the sweep file's directory.
std::vector<std::filesystem::path> read_sweep_file(const std::filesystem::path& path);

} // namespace adaptfv
