#include "adaptfv/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "adaptfv/error.hpp"
#include "adaptfv/evolve.hpp"

namespace adaptfv {

namespace {

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

void write_summary_row(std::ostream& out, const StepReport& r)
{
    out << r.step << ',' << num(r.t) << ',' << num(r.dt) << ',' << num(r.theta) << ',' << num(r.total_mass) << ','
        << num(r.total_entropy) << ',' << r.violations << ',' << num(r.worst_margin) << '\n';
}

void write_snapshot(const std::filesystem::path& dir, const MasState& state, const StepReport& r)
{
    auto out = open_output(dir / ("step_" + std::to_string(state.step) + ".csv"));
    out << "i,x_left,x_right,h,u,v,M_i,maincond_rhs,entropy_residual\n";
    const std::size_t n = state.mesh.cells();
    for (std::size_t i = 0; i < n; ++i) {
        const auto at = [&](const std::vector<double>& xs) { return xs.empty() ? 0.0 : xs[i]; };
        out << i << ',' << num(state.mesh.interface(i)) << ',' << num(state.mesh.interface(i + 1)) << ','
            << num(state.mesh.width(i)) << ',' << num(state.u[i]) << ',' << num(state.ref.v[i]) << ','
            << num(at(r.mesh_term)) << ',' << num(at(r.maincond_rhs)) << ',' << num(at(r.entropy_residual)) << '\n';
    }
    if (!out) throw Error("failed writing snapshot for step " + std::to_string(state.step));
}

StepReport initial_report(const MasState& s, const Problem& problem)
{
    StepReport r;
    r.step = 0;
    r.t = s.t;
    for (std::size_t i = 0; i < s.mesh.cells(); ++i) {
        r.total_mass += s.mesh.width(i) * s.u[i];
        r.total_entropy += s.ref.dx * problem.entropy(s.ref.v[i]);
    }
    return r;
}

} // namespace

std::filesystem::path resolve_output_dir(const RunConfig& config)
{
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* root = std::getenv(kOutputRootEnv); root && *root) return std::filesystem::path(root) / config.name;
    return std::filesystem::path("runs") / config.name;
}

RunResult run(const RunConfig& config, std::ostream* log)
{
    RunConfig resolved = config;
    validate(resolved);
    const Problem problem = make_problem(resolved);
    StepOptions options = make_step_options(resolved);

    const auto dir = resolve_output_dir(resolved);
    std::error_code ec;
    std::filesystem::create_directories(dir / "snapshots", ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());

    {
        auto meta = open_output(dir / "run_meta.txt");
        meta << format_config(resolved);
    }

    Mesh1D mesh = initial_mesh(resolved);
    CellField u0 = initial_condition(resolved, mesh);
    MasState state = MasState::initial(std::move(mesh), std::move(u0));

    auto summary = open_output(dir / "summary.csv");
    summary << "step,t,dt,theta,total_mass,total_entropy,maincond_violations,worst_margin\n";
    StepReport report = initial_report(state, problem);
    write_summary_row(summary, report);
    write_snapshot(dir / "snapshots", state, report);
    std::size_t last_snapshot = 0;

    bool finished = resolved.t_end <= 0.0;
    while (!finished && (resolved.max_steps == 0 || state.step < resolved.max_steps)) {
        options.dt_cap = resolved.t_end - state.t;
        StepOutcome outcome = [&] {
            try {
                return mas_step(state, problem, options);
            } catch (const Error& e) {
                throw Error("step " + std::to_string(state.step + 1) + " (t = " + num(state.t) + "): " + e.what());
            }
        }();
        if (outcome.report.dt == options.dt_cap) {
            outcome.state.t = resolved.t_end;
            outcome.report.t = resolved.t_end;
            finished = true;
        }
        state = std::move(outcome.state);
        report = std::move(outcome.report);
        write_summary_row(summary, report);
        if (resolved.snapshot_every > 0 && state.step % resolved.snapshot_every == 0) {
            write_snapshot(dir / "snapshots", state, report);
            last_snapshot = state.step;
        }
        if (log && resolved.snapshot_every > 0 && state.step % resolved.snapshot_every == 0) {
            *log << "step " << state.step << " t=" << num(state.t) << " dt=" << num(report.dt)
                 << " theta=" << num(report.theta) << " violations=" << report.violations << '\n';
        }
    }
    if (last_snapshot != state.step) write_snapshot(dir / "snapshots", state, report);
    summary.flush();
    if (!summary) throw Error("failed writing summary.csv");
    return {state.step, state.t, dir};
}

std::vector<std::string> run_sweep(std::span<const RunConfig> configs, unsigned jobs)
{
    std::vector<std::string> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                run(configs[i]);
            } catch (const std::exception& e) {
                std::lock_guard lock(failures_mutex);
                failures.push_back(configs[i].name + ": " + e.what());
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    threads.clear();
    std::sort(failures.begin(), failures.end());
    return failures;
}

std::vector<std::filesystem::path> read_sweep_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read sweep file '" + path.string() + "'");
    std::vector<std::filesystem::path> out;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::filesystem::path p = line.substr(first, last - first + 1);
        if (p.is_relative()) p = path.parent_path() / p;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace adaptfv
