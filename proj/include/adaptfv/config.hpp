#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adaptfv/evolve.hpp"
#include "adaptfv/flux.hpp"
#include "adaptfv/mesh.hpp"

namespace adaptfv {

/// A run description. Loaded from a flat `key = value` text file; see
/// config_keys() for every key and its default.
struct RunConfig {
    std::string name = "run";  // file stem; names the default output directory

    std::string problem;  // burgers | advection (required)
    double advection_speed = 1.0;

    std::string initial = "sine";  // sine | riemann | hat
    double sine_amplitude = 1.0;
    double sine_offset = 0.0;
    double riemann_left = 1.0;
    double riemann_right = 0.0;
    std::optional<double> riemann_position;  // default: domain midpoint
    double hat_height = 1.0;
    std::optional<double> hat_center;     // default: domain midpoint
    std::optional<double> hat_halfwidth;  // default: a quarter of the domain

    double domain_left = 0.0;
    double domain_right = 1.0;
    std::size_t n_cells = 0;  // required
    double t_end = 0.0;       // required
    std::size_t max_steps = 0;  // 0: no limit

    double cfl_target = 0.4;
    std::string scheme = "rusanov";  // econs | rusanov | fixed-d
    double fixed_d = 0.0;
    bool adapt = true;
    bool enforce_maincond = false;
    int max_bisect = 30;
    std::string dt_policy = "auto";  // auto | appendix | sufficient
    AdaptParams adapt_params;
    double k = 1.0;
    double q_min = 1e-12;

    std::size_t snapshot_every = 10;
    std::string output_dir;  // empty: $ADAPTFV_OUTPUT_ROOT/<name>, else runs/<name>
    std::uint64_t seed = 0;
};

struct ConfigKey {
    std::string_view name;
    std::string_view description;
};

/// Every accepted key, in the order used by format_config().
std::span<const ConfigKey> config_keys();

/// Parses `key = value` lines ('#' starts a comment). Overrides are
/// `key=value` strings applied after the file and take precedence.
RunConfig parse_config(std::string_view text, std::string_view source = "<string>",
                       std::span<const std::string> overrides = {});

RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// Sets one key; throws ConfigError on unknown keys or unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Checks invariants and resolves defaults that depend on other keys.
void validate(RunConfig& config);

/// The resolved configuration as reloadable `key = value` lines.
std::string format_config(const RunConfig& config);

Problem make_problem(const RunConfig& config);
StepOptions make_step_options(const RunConfig& config);
Mesh1D initial_mesh(const RunConfig& config);

/// Exact cell averages of the configured initial profile.
CellField initial_condition(const RunConfig& config, const Mesh1D& mesh);

} // namespace adaptfv
