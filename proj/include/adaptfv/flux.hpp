#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adaptfv/field.hpp"

namespace adaptfv {

/// A scalar conservation law u_t + f(u)_x = 0 with the quadratic entropy
/// U(u) = u^2/2. The entropy variable is u itself; the entropy potential is
/// psi(u) = u f(u) - g(u), which equals the antiderivative of f.
class Problem {
public:
    using Function = std::function<double(double)>;

    static Problem burgers(double k = 1.0);
    static Problem advection(double speed, double k = 1.0);
    /// Arbitrary flux; psi and the entropy-conservative flux are obtained by
    /// Gauss-Legendre quadrature of f.
    static Problem custom(std::string name, Function f, Function df, double k = 1.0);

    const std::string& name() const { return name_; }
    double k() const { return k_; }

    double flux(double u) const { return f_(u); }
    double flux_derivative(double u) const { return df_(u); }

    double entropy(double u) const { return 0.5 * u * u; }
    double entropy_variable(double u) const { return u; }
    double potential(double u) const { return psi_(u); }
    double entropy_flux(double u) const { return entropy_variable(u) * flux(u) - potential(u); }

    /// (psi(vr) - psi(vl)) / (vr - vl) in a cancellation-free form.
    double potential_quotient(double vl, double vr) const { return ec_(vl, vr); }
    /// B = (f(vr) - f(vl)) / (vr - vl).
    double flux_quotient(double vl, double vr) const { return b_(vl, vr); }
    /// Q* = (f(vl) + f(vr) - 2 F*) / (vr - vl).
    double viscosity_quotient(double vl, double vr) const { return qs_(vl, vr); }

private:
    Problem() = default;

    std::string name_;
    double k_ = 1.0;
    Function f_;
    Function df_;
    Function psi_;
    std::function<double(double, double)> ec_;
    std::function<double(double, double)> b_;
    std::function<double(double, double)> qs_;
};

enum class SchemeKind { entropy_conservative, rusanov, fixed_d };

/// Extra-viscosity choice D = Q - Q*.
struct Scheme {
    SchemeKind kind = SchemeKind::rusanov;
    double fixed_d = 0.0;  // used by SchemeKind::fixed_d

    static Scheme parse(std::string_view name, double fixed_d = 0.0);
    std::string name() const;
};

/// Quantities on one interface between a left value vl and right value vr.
struct InterfaceCoeffs {
    double dv = 0.0;
    double B = 0.0;
    double Q = 0.0;
    double Qstar = 0.0;
    double D = 0.0;
    double Fhat = 0.0;  // numerical flux
    double G = 0.0;     // numerical entropy flux
    bool viscosity_clamped = false;  // rusanov: max|f'| fell below Q*, D clamped to 0
};

/// Below this relative size of vr - vl, difference quotients take their limits.
inline constexpr double kDegenerateJump = 1e-12;

bool is_degenerate_jump(double vl, double vr);

double entropy_conservative_flux(const Problem& problem, double vl, double vr);

InterfaceCoeffs interface_coeffs(const Problem& problem, double vl, double vr, const Scheme& scheme);

/// Coefficients on every periodic interface k+1/2 between v_k and v_{k+1 mod N}.
std::vector<InterfaceCoeffs> all_interface_coeffs(const Problem& problem, const CellField& v, const Scheme& scheme);

double max_qstar(std::span<const InterfaceCoeffs> coeffs);

/// dx / (4 K^3 max(q_min, qstar_max)).
double appendix_dt_bound(double dx, double k, double qstar_max, double q_min = 1e-12);

double cfl_max_dt(const Problem& problem, std::span<const InterfaceCoeffs> coeffs, double dx, double q_min = 1e-12);

/// h_min / max|f'(v)|; infinite when the characteristic speed vanishes.
double advective_dt_bound(const Problem& problem, std::span<const double> values, double h_min);

/// Largest dt with K^3 (dt/dx) (B +- Q)^2 <= D on every interface carrying a
/// jump. Zero when such an interface has D = 0 and B +- Q != 0.
double sufficient_dt_bound(std::span<const InterfaceCoeffs> coeffs, double dx, double k);

} // namespace adaptfv
