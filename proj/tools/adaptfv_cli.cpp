#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "adaptfv/config.hpp"
#include "adaptfv/error.hpp"
#include "adaptfv/runner.hpp"

namespace {

// "--key=value" extras become "key=value" overrides.
std::vector<std::string> overrides_from(const std::vector<std::string>& extras)
{
    std::vector<std::string> out;
    for (const auto& arg : extras) {
        if (arg.rfind("--", 0) != 0 || arg.find('=') == std::string::npos) {
            throw adaptfv::ConfigError("unexpected argument '" + arg + "' (expected --key=value)");
        }
        out.push_back(arg.substr(2));
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive moving-mesh finite-volume solver for 1D scalar conservation laws"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    bool quiet = false;
    auto* run_cmd = app.add_subcommand("run", "run a configuration; extra --key=value flags override the file");
    run_cmd->add_option("config", config_path, "config file")->required();
    run_cmd->add_option("--output-dir", output_dir, "output directory");
    run_cmd->add_flag("-q,--quiet", quiet, "no progress output");
    run_cmd->allow_extras();

    auto* check_cmd = app.add_subcommand("check", "validate a configuration without running it");
    check_cmd->add_option("config", config_path, "config file")->required();
    check_cmd->allow_extras();

    std::string sweep_path;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep_cmd = app.add_subcommand("sweep", "run every config listed in a file as independent runs");
    sweep_cmd->add_option("file", sweep_path, "sweep file, one config path per line")->required();
    sweep_cmd->add_option("-j,--jobs", jobs, "concurrent runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            auto overrides = overrides_from(run_cmd->remaining());
            if (!output_dir.empty()) overrides.push_back("output_dir=" + output_dir);
            const auto config = adaptfv::load_config(config_path, overrides);
            const auto result = adaptfv::run(config, quiet ? nullptr : &std::cerr);
            std::cout << "completed " << result.steps << " steps, t = " << result.t << ", output in "
                      << result.output_dir.string() << '\n';
        } else if (*check_cmd) {
            const auto config = adaptfv::load_config(config_path, overrides_from(check_cmd->remaining()));
            std::cout << adaptfv::format_config(config);
        } else if (*sweep_cmd) {
            std::vector<adaptfv::RunConfig> configs;
            for (const auto& path : adaptfv::read_sweep_file(sweep_path)) configs.push_back(adaptfv::load_config(path));
            const auto failures = adaptfv::run_sweep(configs, jobs);
            for (const auto& f : failures) std::cerr << "error: " << f << '\n';
            std::cout << configs.size() - failures.size() << " of " << configs.size() << " runs completed\n";
            return failures.empty() ? EXIT_SUCCESS : EXIT_FAILURE;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}
