#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "adaptfv/field.hpp"
#include "adaptfv/flux.hpp"
#include "adaptfv/mesh.hpp"
#include "adaptfv/remap.hpp"

namespace adaptfv {

/// Everything recorded about one adaptive step.
struct StepReport {
    std::size_t step = 0;
    double t = 0.0;   // time after the step
    double dt = 0.0;
    double theta = 1.0;
    int halvings = 0;

    std::vector<double> mesh_term;       // M_i
    std::vector<double> maincond_rhs;
    std::vector<double> margin;          // rhs_i - M_i
    std::vector<double> entropy_residual;
    std::vector<double> error_x;         // E^x_i
    std::vector<double> error_fe_bound;  // bound on E^FE_i

    std::size_t violations = 0;
    double worst_margin = 0.0;

    double total_mass = 0.0;     // sum h_i u_i after the step
    double total_entropy = 0.0;  // sum dx U(v_i) after the step
    double max_gcl_residual = 0.0;
    std::size_t clamped_viscosities = 0;
};

/// M_i = v_i (H_{i-1/2} - H_{i+1/2}) with v the pre-remap reference values.
std::vector<double> mesh_term(const CellField& v, const HTerms& h);

/// Right-hand side of the entropy-stability condition on the mesh movement,
/// from the coefficients on the post-remap values.
std::vector<double> maincond_rhs(std::span<const InterfaceCoeffs> coeffs, double dt, double dx, double k);

struct MainCondCheck {
    std::vector<bool> satisfied;
    std::size_t violations = 0;
    double worst_margin = 0.0;  // min_i (rhs_i - M_i)
};

/// M_i <= rhs_i + 1e-14 max(1, |rhs_i|).
MainCondCheck check_maincond(std::span<const double> m, std::span<const double> rhs);

inline constexpr double kMainCondTolerance = 1e-14;

struct EnforceOptions {
    int max_bisect = 30;
    // Extra admissibility test for a trial mesh, given its post-remap
    // reference values and coefficients (e.g. a CFL bound). Empty means
    // always admissible.
    std::function<bool(const Mesh1D&, const CellField&, std::span<const InterfaceCoeffs>)> admissible;
};

struct Enforcement {
    Mesh1D mesh;
    double theta = 1.0;
    int halvings = 0;
};

/// Scales the candidate displacements by the largest theta in {1, 1/2, ...}
/// for which the condition holds in every cell. Falls back to theta = 0 after
/// max_bisect halvings; throws InfeasibleError if even that fails.
Enforcement enforce_maincond(const Mesh1D& old_mesh, const Mesh1D& candidate, const CellField& v,
                             const Problem& problem, const Scheme& scheme, double dt,
                             const EnforceOptions& options = {});

/// U(v_new_i) - U(v_old_i) + (dt/dx)(G_{i+1/2} - G_{i-1/2}).
std::vector<double> entropy_residual(const CellField& v_old, const CellField& v_new,
                                     std::span<const InterfaceCoeffs> coeffs, double dt, double dx);

struct ErrorTerms {
    std::vector<double> x;         // (1/4)(D dv^2 on both sides)
    std::vector<double> fe_bound;  // (K^3/4)(dt/dx)^2 [...]
};

ErrorTerms appendix_error_terms(std::span<const InterfaceCoeffs> coeffs, double dt, double dx, double k);

/// The set of D >= 0 satisfying (B + Q* + D)^2 <= c D and (B - Q* - D)^2 <= c D
/// simultaneously, where c = dx / (K^3 dt). Empty when no such D exists.
struct ViscosityInterval {
    double lo = 0.0;
    double hi = 0.0;
};

std::optional<ViscosityInterval> feasible_viscosity_interval(double b, double qstar, double c);

/// The necessary condition c >= 4 Q* for a feasible D.
bool necessary_viscosity_condition(double qstar, double c);

} // namespace adaptfv
