#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "adaptfv/diagnostics.hpp"
#include "adaptfv/field.hpp"
#include "adaptfv/flux.hpp"
#include "adaptfv/mesh.hpp"
#include "adaptfv/refmap.hpp"
#include "adaptfv/remap.hpp"

namespace adaptfv {

/// Mesh-solution pair at time t together with its reference pair.
struct MasState {
    double t = 0.0;
    std::size_t step = 0;
    Mesh1D mesh;
    CellField u;
    ReferencePair ref;
    double qstar_max = 0.0;  // running maximum of Q* over the run

    static MasState initial(Mesh1D mesh, CellField u);
};

enum class DtPolicy {
    // cfl_target * min(dx / (4 K^3 Q*max), h_min / max|f'|)
    appendix,
    // additionally bounded so that K^3 (dt/dx)(B +- Q)^2 <= D on every interface
    sufficient,
};

struct StepOptions {
    Scheme scheme;
    bool adapt = true;
    AdaptParams adapt_params;
    bool enforce = false;
    int max_bisect = 30;
    double cfl_target = 0.4;
    DtPolicy dt_policy = DtPolicy::appendix;
    double q_min = 1e-12;
    double dt_cap = std::numeric_limits<double>::infinity();
};

struct StepOutcome {
    MasState state;
    StepReport report;
};

/// u_i^{n+1} = u_hat_i - dt/h_i (F_{i+1/2} - F_{i-1/2}) on the new mesh.
/// Throws CflError if dt exceeds dt_max.
CellField step_nonuniform(const Mesh1D& new_mesh, const CellField& u_hat, std::span<const InterfaceCoeffs> coeffs,
                          double dt, double dt_max = std::numeric_limits<double>::infinity());

/// Mesh motion and flux update in one conservative step on the reference mesh:
/// v_i^{n+1} = v_i - (H_{i+1/2} - H_{i-1/2}) - dt/dx (F_{i+1/2} - F_{i-1/2}).
CellField step_uniform_combined(const CellField& v, const HTerms& h, std::span<const InterfaceCoeffs> coeffs,
                                double dt, double dx, double dt_max = std::numeric_limits<double>::infinity());

/// ((B - Q)_{i+1/2} dv_{i+1/2} + (B + Q)_{i-1/2} dv_{i-1/2}) / 2, which equals
/// F_{i+1/2} - F_{i-1/2}.
double incremental_flux_difference(std::span<const InterfaceCoeffs> coeffs, std::size_t i);

/// Largest dt admitted by `policy` for the given post-remap state (before the
/// cfl_target factor).
double admissible_dt(const Problem& problem, const Mesh1D& mesh, const CellField& v,
                     std::span<const InterfaceCoeffs> coeffs, double qstar_running, const StepOptions& options);

/// One step of the adaptive scheme: mesh reconstruction (optionally limited
/// by the entropy condition), conservative remap, finite-volume update.
StepOutcome mas_step(const MasState& state, const Problem& problem, const StepOptions& options);

} // namespace adaptfv
