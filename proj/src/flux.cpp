#include "adaptfv/flux.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "adaptfv/error.hpp"

namespace adaptfv {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Mean value of f over [lo, hi] (f(lo) when lo == hi).
double mean_value(const Problem::Function& f, double lo, double hi)
{
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t q = 0; q < kNodes.size(); ++q) sum += kWeights[q] * f(mid + half * kNodes[q]);
    return 0.5 * sum;
}

void require_finite_pair(double vl, double vr, const char* what)
{
    if (!std::isfinite(vl) || !std::isfinite(vr)) throw NumericError(std::string(what) + ": non-finite state");
}

} // namespace

Problem Problem::burgers(double k)
{
    Problem p;
    p.name_ = "burgers";
    p.k_ = k;
    p.f_ = [](double u) { return 0.5 * u * u; };
    p.df_ = [](double u) { return u; };
    p.psi_ = [](double u) { return u * u * u / 6.0; };
    p.ec_ = [](double vl, double vr) { return (vl * vl + vl * vr + vr * vr) / 6.0; };
    p.b_ = [](double vl, double vr) { return 0.5 * (vl + vr); };
    p.qs_ = [](double vl, double vr) { return (vr - vl) / 6.0; };
    return p;
}

Problem Problem::advection(double speed, double k)
{
    Problem p;
    p.name_ = "advection";
    p.k_ = k;
    p.f_ = [speed](double u) { return speed * u; };
    p.df_ = [speed](double) { return speed; };
    p.psi_ = [speed](double u) { return 0.5 * speed * u * u; };
    p.ec_ = [speed](double vl, double vr) { return 0.5 * speed * (vl + vr); };
    p.b_ = [speed](double, double) { return speed; };
    p.qs_ = [](double, double) { return 0.0; };
    return p;
}

Problem Problem::custom(std::string name, Function f, Function df, double k)
{
    Problem p;
    p.name_ = std::move(name);
    p.k_ = k;
    p.f_ = f;
    p.df_ = std::move(df);
    p.psi_ = [f](double u) { return u * mean_value(f, 0.0, u); };
    p.ec_ = [f](double vl, double vr) { return mean_value(f, vl, vr); };
    p.b_ = [f](double vl, double vr) { return (f(vr) - f(vl)) / (vr - vl); };
    p.qs_ = [f](double vl, double vr) { return (f(vl) + f(vr) - 2.0 * mean_value(f, vl, vr)) / (vr - vl); };
    return p;
}

Scheme Scheme::parse(std::string_view name, double fixed_d)
{
    if (name == "econs") return {SchemeKind::entropy_conservative, 0.0};
    if (name == "rusanov") return {SchemeKind::rusanov, 0.0};
    if (name == "fixed-d") {
        if (!(fixed_d >= 0.0) || !std::isfinite(fixed_d)) throw ConfigError("fixed-d scheme needs a finite D >= 0");
        return {SchemeKind::fixed_d, fixed_d};
    }
    throw ConfigError("unknown scheme '" + std::string(name) + "' (expected econs, rusanov or fixed-d)");
}

std::string Scheme::name() const
{
    switch (kind) {
    case SchemeKind::entropy_conservative: return "econs";
    case SchemeKind::rusanov: return "rusanov";
    case SchemeKind::fixed_d: return "fixed-d";
    }
    return "?";
}

bool is_degenerate_jump(double vl, double vr)
{
    const double scale = std::max({1.0, std::abs(vl), std::abs(vr)});
    return std::abs(vr - vl) < kDegenerateJump * scale;
}

double entropy_conservative_flux(const Problem& problem, double vl, double vr)
{
    require_finite_pair(vl, vr, "entropy_conservative_flux");
    if (is_degenerate_jump(vl, vr)) return problem.flux(vl);
    return problem.potential_quotient(vl, vr);
}

InterfaceCoeffs interface_coeffs(const Problem& problem, double vl, double vr, const Scheme& scheme)
{
    require_finite_pair(vl, vr, "interface_coeffs");
    InterfaceCoeffs c;
    c.dv = vr - vl;

    double fstar = problem.flux(vl);
    if (is_degenerate_jump(vl, vr)) {
        c.B = problem.flux_derivative(vl);
        c.Qstar = 0.0;
    } else {
        c.B = problem.flux_quotient(vl, vr);
        fstar = problem.potential_quotient(vl, vr);
        c.Qstar = problem.viscosity_quotient(vl, vr);
    }

    switch (scheme.kind) {
    case SchemeKind::entropy_conservative:
        c.D = 0.0;
        break;
    case SchemeKind::rusanov: {
        const double speed = std::max(std::abs(problem.flux_derivative(vl)), std::abs(problem.flux_derivative(vr)));
        c.viscosity_clamped = speed < c.Qstar;
        c.D = std::max(0.0, speed - c.Qstar);
        break;
    }
    case SchemeKind::fixed_d:
        c.D = scheme.fixed_d;
        break;
    }
    c.Q = c.Qstar + c.D;
    // Same as (fl + fr)/2 - Q dv/2, anchored on F* so that D = 0 returns F* exactly.
    c.Fhat = fstar - 0.5 * c.D * c.dv;
    c.G = 0.5 * (problem.entropy_variable(vl) + problem.entropy_variable(vr)) * c.Fhat -
          0.5 * (problem.potential(vl) + problem.potential(vr));
    if (!std::isfinite(c.Fhat) || !std::isfinite(c.G)) throw NumericError("interface_coeffs: non-finite flux");
    return c;
}

std::vector<InterfaceCoeffs> all_interface_coeffs(const Problem& problem, const CellField& v, const Scheme& scheme)
{
    const std::size_t n = v.size();
    std::vector<InterfaceCoeffs> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = interface_coeffs(problem, v[k], v[k + 1 == n ? 0 : k + 1], scheme);
    return out;
}

double max_qstar(std::span<const InterfaceCoeffs> coeffs)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : coeffs) m = std::max(m, c.Qstar);
    return m;
}

double appendix_dt_bound(double dx, double k, double qstar_max, double q_min)
{
    return dx / (4.0 * k * k * k * std::max(q_min, qstar_max));
}

double cfl_max_dt(const Problem& problem, std::span<const InterfaceCoeffs> coeffs, double dx, double q_min)
{
    if (coeffs.empty()) throw SizeError("cfl_max_dt: no interfaces");
    return appendix_dt_bound(dx, problem.k(), max_qstar(coeffs), q_min);
}

double advective_dt_bound(const Problem& problem, std::span<const double> values, double h_min)
{
    double speed = 0.0;
    for (double v : values) speed = std::max(speed, std::abs(problem.flux_derivative(v)));
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    return h_min / speed;
}

double sufficient_dt_bound(std::span<const InterfaceCoeffs> coeffs, double dx, double k)
{
    double bound = std::numeric_limits<double>::infinity();
    const double k3 = k * k * k;
    for (const auto& c : coeffs) {
        if (c.dv == 0.0) continue;
        const double spread = std::abs(c.B) + std::abs(c.Q);
        if (spread == 0.0) continue;
        bound = std::min(bound, dx * c.D / (k3 * spread * spread));
    }
    return bound;
}

} // namespace adaptfv
