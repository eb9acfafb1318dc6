#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "adaptfv/error.hpp"
#include "adaptfv/flux.hpp"
#include "oracles.hpp"

using namespace adaptfv;

namespace {

double potential_quotient_oracle(double (*psi)(double), double vl, double vr)
{
    return (psi(vr) - psi(vl)) / (vr - vl);
}

double burgers_psi(double u) { return u * u * u / 6.0; }

} // namespace

TEST_SUITE("flux") {

TEST_CASE("entropy-conservative flux")
{
    const auto burgers = Problem::burgers();
    CHECK(entropy_conservative_flux(burgers, 0.7, 0.7) == 0.5 * 0.7 * 0.7);
    const double oracle_value = potential_quotient_oracle(burgers_psi, 1.0, 3.0);
    CHECK(oracle_value == doctest::Approx(13.0 / 6.0).epsilon(1e-15));
    CHECK(entropy_conservative_flux(burgers, 1.0, 3.0) == doctest::Approx(oracle_value).epsilon(1e-15));

    const double a = -1.7;
    const auto adv = Problem::advection(a);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const auto v = oracle::random_values(rng, 2, -3, 3);
        const double psi_quotient = (0.5 * a * v[1] * v[1] - 0.5 * a * v[0] * v[0]) / (v[1] - v[0]);
        CHECK(entropy_conservative_flux(adv, v[0], v[1]) == doctest::Approx(psi_quotient).epsilon(1e-12));
        CHECK(entropy_conservative_flux(adv, v[0], v[1]) == doctest::Approx(a * (v[0] + v[1]) / 2).epsilon(1e-14));
    }
    CHECK_THROWS_AS(entropy_conservative_flux(burgers, NAN, 1.0), NumericError);
}

TEST_CASE("Burgers coefficients at (1, 3)")
{
    const auto c = interface_coeffs(Problem::burgers(), 1.0, 3.0, Scheme{SchemeKind::rusanov});
    CHECK(c.dv == 2.0);
    CHECK(c.B == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.Qstar == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(c.Q == doctest::Approx(3.0).epsilon(1e-14));  // max |f'| = 3
    CHECK(c.D == doctest::Approx(3.0 - 1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("entropy-conservative scheme has D = 0 and Fhat = F*")
{
    const auto p = Problem::burgers();
    const auto c = interface_coeffs(p, -0.4, 1.3, Scheme{SchemeKind::entropy_conservative});
    CHECK(c.D == 0.0);
    CHECK(c.Q == c.Qstar);
    CHECK(c.Fhat == entropy_conservative_flux(p, -0.4, 1.3));
}

TEST_CASE("equal states take the pointwise limits")
{
    const auto p = Problem::burgers();
    for (const auto& s : {Scheme{SchemeKind::entropy_conservative}, Scheme{SchemeKind::rusanov},
                          Scheme{SchemeKind::fixed_d, 0.8}}) {
        const auto c = interface_coeffs(p, 1.4, 1.4, s);
        CHECK(c.dv == 0.0);
        CHECK(c.B == 1.4);
        CHECK(c.Qstar == 0.0);
        CHECK(c.Fhat == p.flux(1.4));
    }
    // Nearly equal states stay finite.
    const auto c = interface_coeffs(p, 1.0, 1.0 + 1e-14, Scheme{SchemeKind::rusanov});
    CHECK(std::isfinite(c.B));
    CHECK(c.Qstar == 0.0);
}

TEST_CASE("viscosity form round trip and consistency")
{
    std::mt19937_64 rng(4);
    const auto p = Problem::burgers();
    for (int k = 0; k < 500; ++k) {
        const auto v = oracle::random_values(rng, 2, -2, 2);
        for (const auto& s : {Scheme{SchemeKind::entropy_conservative}, Scheme{SchemeKind::rusanov},
                              Scheme{SchemeKind::fixed_d, 0.3}}) {
            const auto c = interface_coeffs(p, v[0], v[1], s);
            const double q_back = (p.flux(v[0]) + p.flux(v[1]) - 2.0 * c.Fhat) / c.dv;
            CHECK(q_back == doctest::Approx(c.Q).epsilon(1e-9));
            const double central = 0.5 * (p.flux(v[0]) + p.flux(v[1])) - 0.5 * c.Q * c.dv;
            CHECK(std::abs(central - c.Fhat) <= 1e-14 * 8);
            CHECK(c.Q == doctest::Approx(c.Qstar + c.D).epsilon(1e-15));
            CHECK(interface_coeffs(p, v[0], v[0], s).Fhat == p.flux(v[0]));
        }
    }
}

TEST_CASE("Rusanov viscosity is non-negative")
{
    std::mt19937_64 rng(6);
    const auto p = Problem::burgers();
    for (int k = 0; k < 1000; ++k) {
        const auto v = oracle::random_values(rng, 2, -5, 5);
        const auto c = interface_coeffs(p, v[0], v[1], Scheme{SchemeKind::rusanov});
        CHECK(c.D >= 0.0);
        CHECK_FALSE(c.viscosity_clamped);  // max|f'| >= |dv|/6 always holds for Burgers
    }
    // A flux whose speed at the endpoints is smaller than its Q*.
    const auto odd = Problem::custom("cubic-ish", [](double u) { return std::sin(3.0 * u); },
                                     [](double u) { return 3.0 * std::cos(3.0 * u); });
    bool clamped_seen = false;
    for (int k = 0; k < 2000 && !clamped_seen; ++k) {
        const auto v = oracle::random_values(rng, 2, -2, 2);
        const auto c = interface_coeffs(odd, v[0], v[1], Scheme{SchemeKind::rusanov});
        CHECK(c.D >= 0.0);
        clamped_seen = c.viscosity_clamped;
    }
    CHECK(clamped_seen);
}

TEST_CASE("entropy conservation identity on random periodic states")
{
    std::mt19937_64 rng(8);
    for (const auto& p : {Problem::burgers(), Problem::advection(0.6)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 3 + rng() % 60;
            const CellField v(oracle::random_values(rng, n, -2, 2), Frame::reference);
            const auto c = all_interface_coeffs(p, v, Scheme{SchemeKind::entropy_conservative});
            // v_i (F_{i+1/2} - F_{i-1/2}) = G_{i+1/2} - G_{i-1/2} in every cell.
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t l = (i + n - 1) % n;
                const double cell = v[i] * (c[i].Fhat - c[l].Fhat) - (c[i].G - c[l].G);
                CHECK(std::abs(cell) <= 1e-12);
                total += std::abs(cell);
            }
            CHECK(total <= 1e-12 * static_cast<double>(n));
        }
    }
}

TEST_CASE("custom flux: quadrature potential matches the closed forms")
{
    const auto q = Problem::custom("burgers-q", [](double u) { return 0.5 * u * u; }, [](double u) { return u; });
    const auto b = Problem::burgers();
    std::mt19937_64 rng(10);
    for (int k = 0; k < 100; ++k) {
        const auto v = oracle::random_values(rng, 2, -3, 3);
        CHECK(q.potential(v[0]) == doctest::Approx(b.potential(v[0])).epsilon(1e-13));
        CHECK(entropy_conservative_flux(q, v[0], v[1]) ==
              doctest::Approx(entropy_conservative_flux(b, v[0], v[1])).epsilon(1e-13));
        // The generic difference quotients lose digits to cancellation; the
        // closed forms do not.
        CHECK(q.flux_quotient(v[0], v[1]) == doctest::Approx(b.flux_quotient(v[0], v[1])).epsilon(1e-10));
        CHECK(q.viscosity_quotient(v[0], v[1]) == doctest::Approx(b.viscosity_quotient(v[0], v[1])).epsilon(1e-8));
        CHECK(b.viscosity_quotient(v[0], v[1]) == (v[1] - v[0]) / 6.0);
    }
    // g' = U' f' = u f'(u), checked by central differences for a non-polynomial flux.
    const auto s = Problem::custom("sine", [](double u) { return std::sin(u); }, [](double u) { return std::cos(u); });
    for (double u : {-1.3, -0.2, 0.4, 2.1}) {
        const double eps = 1e-5;
        const double dg = (s.entropy_flux(u + eps) - s.entropy_flux(u - eps)) / (2 * eps);
        CHECK(dg == doctest::Approx(u * std::cos(u)).epsilon(1e-8));
    }
}

TEST_CASE("time-step bounds")
{
    std::vector<InterfaceCoeffs> c(3);
    c[0].Qstar = 0.1;
    c[1].Qstar = 0.5;
    c[2].Qstar = -0.2;
    CHECK(cfl_max_dt(Problem::burgers(), c, 0.01) == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(cfl_max_dt(Problem::burgers(2.0), c, 0.01) == doctest::Approx(0.005 / 8).epsilon(1e-15));

    std::vector<InterfaceCoeffs> flat(4);
    CHECK(cfl_max_dt(Problem::burgers(), flat, 0.01, 1e-12) == doctest::Approx(0.01 / 4e-12).epsilon(1e-15));
    CHECK_THROWS_AS(cfl_max_dt(Problem::burgers(), std::vector<InterfaceCoeffs>{}, 0.01), SizeError);

    const std::vector<double> vals{0.5, -2.0, 1.0};
    CHECK(advective_dt_bound(Problem::burgers(), vals, 0.1) == doctest::Approx(0.05));
    CHECK(std::isinf(advective_dt_bound(Problem::burgers(), std::vector<double>{0.0, 0.0}, 0.1)));
}

TEST_CASE("sufficient bound makes every interface term non-negative")
{
    std::mt19937_64 rng(12);
    const auto p = Problem::burgers();
    const double dx = 0.01;
    for (int trial = 0; trial < 100; ++trial) {
        const CellField v(oracle::random_values(rng, 20, -1, 2), Frame::reference);
        const auto c = all_interface_coeffs(p, v, Scheme{SchemeKind::rusanov});
        const double dt = sufficient_dt_bound(c, dx, 1.0);
        REQUIRE(dt > 0.0);
        double tightest = std::numeric_limits<double>::infinity();
        for (const auto& x : c) {
            const double lam = dt / dx;
            const double a = x.D - lam * (x.B + x.Q) * (x.B + x.Q);
            const double b = x.D - lam * (x.B - x.Q) * (x.B - x.Q);
            CHECK(a >= -1e-13 * std::max(1.0, x.D));
            CHECK(b >= -1e-13 * std::max(1.0, x.D));
            tightest = std::min({tightest, std::abs(a), std::abs(b)});
        }
        CHECK(tightest <= 1e-12);
    }
    // No extra viscosity: no positive step satisfies the sufficient condition.
    const auto ec = all_interface_coeffs(p, CellField({0.0, 1.0, 0.5}, Frame::reference),
                                         Scheme{SchemeKind::entropy_conservative});
    CHECK(sufficient_dt_bound(ec, dx, 1.0) == 0.0);
}

TEST_CASE("scheme names")
{
    CHECK(Scheme::parse("econs").kind == SchemeKind::entropy_conservative);
    CHECK(Scheme::parse("rusanov").kind == SchemeKind::rusanov);
    CHECK(Scheme::parse("fixed-d", 0.2).fixed_d == 0.2);
    CHECK_THROWS_AS(Scheme::parse("fixed-d", -1.0), ConfigError);
    CHECK_THROWS_AS(Scheme::parse("godunov"), ConfigError);
    CHECK(Scheme::parse("fixed-d", 1.0).name() == "fixed-d");
}

}
