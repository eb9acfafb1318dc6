#include "adaptfv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adaptfv/error.hpp"

namespace adaptfv {

namespace {

std::size_t left_of(std::size_t i, std::size_t n) { return i == 0 ? n - 1 : i - 1; }

} // namespace

std::vector<double> mesh_term(const CellField& v, const HTerms& h)
{
    const std::size_t n = v.size();
    if (h.size() != n) throw SizeError("mesh_term: size mismatch");
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = v[i] * (h[left_of(i, n)] - h[i]);
    return m;
}

std::vector<double> maincond_rhs(std::span<const InterfaceCoeffs> coeffs, double dt, double dx, double k)
{
    const std::size_t n = coeffs.size();
    const double lambda = dt / dx;
    const double k3 = k * k * k;
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = coeffs[left_of(i, n)];
        const auto& r = coeffs[i];
        const double left_spread = l.B + l.Qstar + l.D;
        const double right_spread = r.B - r.Qstar - r.D;
        const double left = (l.D - k3 * lambda * left_spread * left_spread) * l.dv * l.dv;
        const double right = (r.D - k3 * lambda * right_spread * right_spread) * r.dv * r.dv;
        rhs[i] = dt / (4.0 * dx) * (left + right);
    }
    return rhs;
}

MainCondCheck check_maincond(std::span<const double> m, std::span<const double> rhs)
{
    if (m.size() != rhs.size()) throw SizeError("check_maincond: size mismatch");
    MainCondCheck out;
    out.satisfied.resize(m.size());
    out.worst_margin = m.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double scale = std::max(1.0, std::abs(rhs[i]));
        const bool ok = m[i] <= rhs[i] + kMainCondTolerance * scale;
        out.satisfied[i] = ok;
        if (!ok) ++out.violations;
        out.worst_margin = std::min(out.worst_margin, rhs[i] - m[i]);
    }
    return out;
}

Enforcement enforce_maincond(const Mesh1D& old_mesh, const Mesh1D& candidate, const CellField& v,
                             const Problem& problem, const Scheme& scheme, double dt,
                             const EnforceOptions& options)
{
    if (v.size() != old_mesh.cells()) throw SizeError("enforce_maincond: field/mesh size mismatch");
    const double dx = old_mesh.reference_width();

    std::vector<std::size_t> failing;
    auto passes = [&](const Mesh1D& trial) {
        const auto d = edge_displacements(old_mesh, trial);
        const auto h = h_terms(v, old_mesh, d);
        const auto v_hat = remap_v_via_h(v, h);
        const auto coeffs = all_interface_coeffs(problem, v_hat, scheme);
        const auto check = check_maincond(mesh_term(v, h), maincond_rhs(coeffs, dt, dx, problem.k()));
        failing.clear();
        for (std::size_t i = 0; i < check.satisfied.size(); ++i) {
            if (!check.satisfied[i]) failing.push_back(i);
        }
        if (!failing.empty()) return false;
        return !options.admissible || options.admissible(trial, v_hat, coeffs);
    };

    double theta = 1.0;
    for (int halvings = 0; halvings <= options.max_bisect; ++halvings) {
        Mesh1D trial = blend_meshes(old_mesh, candidate, theta);
        if (passes(trial)) return {std::move(trial), theta, halvings};
        theta *= 0.5;
    }
    if (passes(old_mesh)) return {old_mesh, 0.0, options.max_bisect};

    std::ostringstream msg;
    if (failing.empty()) {
        msg << "enforce_maincond: frozen mesh fails the admissibility test";
    } else {
        msg << "enforce_maincond: condition fails with a frozen mesh (rhs < 0) in cells";
        for (std::size_t i = 0; i < std::min<std::size_t>(failing.size(), 20); ++i) msg << ' ' << failing[i];
        if (failing.size() > 20) msg << " ... (" << failing.size() << " total)";
    }
    throw InfeasibleError(msg.str());
}

std::vector<double> entropy_residual(const CellField& v_old, const CellField& v_new,
                                     std::span<const InterfaceCoeffs> coeffs, double dt, double dx)
{
    const std::size_t n = v_old.size();
    if (v_new.size() != n || coeffs.size() != n) throw SizeError("entropy_residual: size mismatch");
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double du = 0.5 * v_new[i] * v_new[i] - 0.5 * v_old[i] * v_old[i];
        r[i] = du + dt / dx * (coeffs[i].G - coeffs[left_of(i, n)].G);
    }
    return r;
}

ErrorTerms appendix_error_terms(std::span<const InterfaceCoeffs> coeffs, double dt, double dx, double k)
{
    const std::size_t n = coeffs.size();
    const double lambda = dt / dx;
    const double k3 = k * k * k;
    ErrorTerms e{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = coeffs[left_of(i, n)];
        const auto& r = coeffs[i];
        const double l2 = l.dv * l.dv;
        const double r2 = r.dv * r.dv;
        e.x[i] = 0.25 * (l.D * l2 + r.D * r2);
        const double right_spread = r.B - r.Qstar - r.D;
        const double left_spread = l.B + l.Qstar + l.D;
        e.fe_bound[i] = 0.25 * k3 * lambda * lambda * (right_spread * right_spread * r2 + left_spread * left_spread * l2);
    }
    return e;
}

namespace {

// Roots of D^2 + (2k - c) D + k^2, if real.
std::optional<ViscosityInterval> quadratic_interval(double k, double c)
{
    const double disc = c * (c - 4.0 * k);
    if (disc < 0.0) return std::nullopt;
    const double b = c - 2.0 * k;
    const double s = std::sqrt(disc);
    if (b + s <= 0.0) return ViscosityInterval{(b - s) / 2.0, (b + s) / 2.0};
    const double hi = 0.5 * (b + s);
    return ViscosityInterval{k * k / hi, hi};
}

} // namespace

std::optional<ViscosityInterval> feasible_viscosity_interval(double b, double qstar, double c)
{
    if (!(c > 0.0)) return std::nullopt;
    const auto first = quadratic_interval(qstar + b, c);
    const auto second = quadratic_interval(qstar - b, c);
    if (!first || !second) return std::nullopt;
    const double lo = std::max({0.0, first->lo, second->lo});
    const double hi = std::min(first->hi, second->hi);
    if (lo > hi) return std::nullopt;
    return ViscosityInterval{lo, hi};
}

bool necessary_viscosity_condition(double qstar, double c) { return c >= 4.0 * qstar; }

} // namespace adaptfv
