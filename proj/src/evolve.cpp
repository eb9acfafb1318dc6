#include "adaptfv/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adaptfv/error.hpp"

namespace adaptfv {

namespace {

constexpr double kCflSlack = 1e-12;

std::size_t left_of(std::size_t i, std::size_t n) { return i == 0 ? n - 1 : i - 1; }

void require_dt(double dt, double dt_max, const char* what)
{
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw CflError(std::string(what) + ": invalid time step " + std::to_string(dt));
    }
    if (dt > dt_max * (1.0 + kCflSlack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": time step " << dt << " exceeds the admissible bound " << dt_max;
        throw CflError(msg.str());
    }
}

} // namespace

MasState MasState::initial(Mesh1D mesh, CellField u)
{
    if (u.size() != mesh.cells()) throw SizeError("MasState: field/mesh size mismatch");
    require_finite(u.values(), "initial data");
    auto ref = to_reference(mesh, u);
    return MasState{0.0, 0, std::move(mesh), std::move(u), std::move(ref), 0.0};
}

CellField step_nonuniform(const Mesh1D& new_mesh, const CellField& u_hat, std::span<const InterfaceCoeffs> coeffs,
                          double dt, double dt_max)
{
    const std::size_t n = new_mesh.cells();
    if (u_hat.size() != n || coeffs.size() != n) throw SizeError("step_nonuniform: size mismatch");
    require_dt(dt, dt_max, "step_nonuniform");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = u_hat[i] - dt / new_mesh.width(i) * (coeffs[i].Fhat - coeffs[left_of(i, n)].Fhat);
    }
    require_finite(out, "step_nonuniform");
    return CellField(std::move(out), Frame::physical);
}

CellField step_uniform_combined(const CellField& v, const HTerms& h, std::span<const InterfaceCoeffs> coeffs,
                                double dt, double dx, double dt_max)
{
    const std::size_t n = v.size();
    if (h.size() != n || coeffs.size() != n) throw SizeError("step_uniform_combined: size mismatch");
    require_dt(dt, dt_max, "step_uniform_combined");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = left_of(i, n);
        out[i] = v[i] - (h[i] - h[l]) - dt / dx * (coeffs[i].Fhat - coeffs[l].Fhat);
    }
    require_finite(out, "step_uniform_combined");
    return CellField(std::move(out), Frame::reference);
}

double incremental_flux_difference(std::span<const InterfaceCoeffs> coeffs, std::size_t i)
{
    const auto& r = coeffs[i];
    const auto& l = coeffs[left_of(i, coeffs.size())];
    return 0.5 * ((r.B - r.Q) * r.dv + (l.B + l.Q) * l.dv);
}

double admissible_dt(const Problem& problem, const Mesh1D& mesh, const CellField& v,
                     std::span<const InterfaceCoeffs> coeffs, double qstar_running, const StepOptions& options)
{
    const double dx = mesh.reference_width();
    const double qstar = std::max(qstar_running, max_qstar(coeffs));
    double bound = std::min(appendix_dt_bound(dx, problem.k(), qstar, options.q_min),
                            advective_dt_bound(problem, v.values(), mesh.min_width()));
    if (options.dt_policy == DtPolicy::sufficient) {
        bound = std::min(bound, sufficient_dt_bound(coeffs, dx, problem.k()));
    }
    return bound;
}

StepOutcome mas_step(const MasState& state, const Problem& problem, const StepOptions& options)
{
    if (!(options.cfl_target > 0.0 && options.cfl_target <= 1.0)) {
        throw ConfigError("cfl_target must lie in (0, 1]");
    }
    const double dx = state.ref.dx;
    const CellField& v = state.ref.v;

    // Step 1: mesh reconstruction.
    Mesh1D next = options.adapt ? reconstruct_mesh(state.mesh, state.u, options.adapt_params) : state.mesh;

    double qstar_running = state.qstar_max;
    double dt = 0.0;
    double theta = 1.0;
    int halvings = 0;

    auto choose_dt = [&](double bound) {
        const double chosen = std::min(options.cfl_target * bound, options.dt_cap);
        if (!(chosen > 0.0) || !std::isfinite(chosen)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "mas_step: no admissible time step at step " << state.step << " (bound " << bound << ")";
            throw CflError(msg.str());
        }
        return chosen;
    };

    if (options.enforce) {
        // dt is fixed from the frozen-mesh state, so theta = 0 stays admissible.
        const auto frozen = all_interface_coeffs(problem, v, options.scheme);
        dt = choose_dt(admissible_dt(problem, state.mesh, v, frozen, qstar_running, options));
        if (next != state.mesh) {
            EnforceOptions enforce_options;
            enforce_options.max_bisect = options.max_bisect;
            enforce_options.admissible = [&](const Mesh1D& trial, const CellField& v_hat,
                                             std::span<const InterfaceCoeffs> coeffs) {
                return dt <= admissible_dt(problem, trial, v_hat, coeffs, qstar_running, options);
            };
            auto limited = enforce_maincond(state.mesh, next, v, problem, options.scheme, dt, enforce_options);
            next = std::move(limited.mesh);
            theta = limited.theta;
            halvings = limited.halvings;
        }
    }

    // Step 2: conservative remap onto the new mesh.
    const auto displacements = edge_displacements(state.mesh, next);
    const CellField u_hat = remap_u(state.mesh, next, state.u);
    const HTerms h = h_terms(v, state.mesh, displacements);
    const CellField v_hat = to_reference(next, u_hat).v;

    // Step 3: time evolution with fluxes evaluated on the post-remap reference values.
    const auto coeffs = all_interface_coeffs(problem, v_hat, options.scheme);
    const double bound = admissible_dt(problem, next, v_hat, coeffs, qstar_running, options);
    if (!options.enforce) dt = choose_dt(bound);
    qstar_running = std::max(qstar_running, max_qstar(coeffs));
    CellField u_next = step_nonuniform(next, u_hat, coeffs, dt, bound);
    ReferencePair ref_next = to_reference(next, u_next);

    StepReport report;
    report.step = state.step + 1;
    report.t = state.t + dt;
    report.dt = dt;
    report.theta = theta;
    report.halvings = halvings;
    report.mesh_term = mesh_term(v, h);
    report.maincond_rhs = maincond_rhs(coeffs, dt, dx, problem.k());
    const auto check = check_maincond(report.mesh_term, report.maincond_rhs);
    report.violations = check.violations;
    report.worst_margin = check.worst_margin;
    report.margin.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) report.margin[i] = report.maincond_rhs[i] - report.mesh_term[i];
    report.entropy_residual = entropy_residual(v, ref_next.v, coeffs, dt, dx);
    auto errors = appendix_error_terms(coeffs, dt, dx, problem.k());
    report.error_x = std::move(errors.x);
    report.error_fe_bound = std::move(errors.fe_bound);
    for (std::size_t i = 0; i < next.cells(); ++i) {
        report.total_mass += next.width(i) * u_next[i];
        report.total_entropy += dx * problem.entropy(ref_next.v[i]);
    }
    for (double r : gcl_residual(next, u_next, ref_next)) {
        report.max_gcl_residual = std::max(report.max_gcl_residual, std::abs(r));
    }
    report.clamped_viscosities = static_cast<std::size_t>(
        std::count_if(coeffs.begin(), coeffs.end(), [](const InterfaceCoeffs& c) { return c.viscosity_clamped; }));

    MasState out{report.t, report.step, std::move(next), std::move(u_next), std::move(ref_next), qstar_running};
    return {std::move(out), std::move(report)};
}

} // namespace adaptfv
