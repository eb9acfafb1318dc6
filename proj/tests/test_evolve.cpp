#include <doctest.h>

#include <cmath>
#include <random>

#include "adaptfv/error.hpp"
#include "adaptfv/evolve.hpp"
#include "oracles.hpp"

using namespace adaptfv;

namespace {

MasState riemann_state(std::size_t n, double left, double right)
{
    const auto mesh = Mesh1D::uniform(0.0, 1.0, n);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = mesh.center(i) < 0.5 ? left : right;
    return MasState::initial(mesh, CellField(std::move(u), Frame::physical));
}

double total_mass(const MasState& s)
{
    double m = 0.0;
    for (std::size_t i = 0; i < s.mesh.cells(); ++i) m += s.mesh.width(i) * s.u[i];
    return m;
}

} // namespace

TEST_SUITE("evolve") {

TEST_CASE("non-uniform step with zero dt or constant data is the identity")
{
    const auto p = Problem::burgers();
    const Mesh1D mesh({0.0, 0.2, 0.5, 0.6, 1.0});
    const CellField u({0.3, -1.0, 2.0, 0.5}, Frame::physical);
    const auto c = all_interface_coeffs(p, to_reference(mesh, u).v, Scheme{SchemeKind::rusanov});
    CHECK(step_nonuniform(mesh, u, c, 0.0) == u);

    const CellField flat(std::vector<double>(4, 0.8), Frame::physical);
    const auto cf = all_interface_coeffs(p, flat, Scheme{SchemeKind::rusanov});
    CHECK(step_nonuniform(mesh, flat, cf, 0.01) == flat);
}

TEST_CASE("entropy-conservative Burgers step with equal fluxes")
{
    // Every F* equals 1/6 for u = (0, 1, 0, -1), so nothing changes.
    const auto p = Problem::burgers();
    const auto mesh = Mesh1D::uniform(0, 1, 4);
    const CellField u({0.0, 1.0, 0.0, -1.0}, Frame::physical);
    const auto c = all_interface_coeffs(p, u, Scheme{SchemeKind::entropy_conservative});
    for (const auto& x : c) CHECK(x.Fhat == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const auto out = step_nonuniform(mesh, u, c, 0.05);
    for (std::size_t i = 0; i < 4; ++i) CHECK(out[i] == doctest::Approx(u[i]).epsilon(1e-15).scale(1.0));
}

TEST_CASE("non-uniform step by hand")
{
    // u = (1, 0, 0) on widths (0.5, 0.25, 0.25), econs: F = (1/6, 0, 1/6).
    const auto p = Problem::burgers();
    const Mesh1D mesh({0.0, 0.5, 0.75, 1.0});
    const CellField u({1.0, 0.0, 0.0}, Frame::physical);
    const auto c = all_interface_coeffs(p, u, Scheme{SchemeKind::entropy_conservative});
    const auto out = step_nonuniform(mesh, u, c, 0.1);
    CHECK(out[0] == doctest::Approx(1.0 - 0.1 / 0.5 * (1.0 / 6.0 - 1.0 / 6.0)));
    CHECK(out[1] == doctest::Approx(0.0 - 0.1 / 0.25 * (0.0 - 1.0 / 6.0)));
    CHECK(out[2] == doctest::Approx(0.0 - 0.1 / 0.25 * (1.0 / 6.0 - 0.0)));
}

TEST_CASE("step rejects an excessive dt instead of clipping")
{
    const auto mesh = Mesh1D::uniform(0, 1, 4);
    const CellField u({1.0, 0.0, 0.0, 0.0}, Frame::physical);
    const auto c = all_interface_coeffs(Problem::burgers(), u, Scheme{SchemeKind::rusanov});
    CHECK_THROWS_AS(step_nonuniform(mesh, u, c, 0.2, 0.1), CflError);
    CHECK_NOTHROW(step_nonuniform(mesh, u, c, 0.1, 0.1));
    CHECK_THROWS_AS(step_nonuniform(mesh, u, c, -0.1), CflError);
    CHECK_THROWS_AS(step_uniform_combined(u, HTerms{{0, 0, 0, 0}}, c, 0.2, 0.25, 0.1), CflError);
}

TEST_CASE("combined step reduces to its parts")
{
    const auto p = Problem::burgers();
    std::mt19937_64 rng(41);
    const std::size_t n = 12;
    const CellField v(oracle::random_values(rng, n, -1, 1), Frame::reference);
    const auto c = all_interface_coeffs(p, v, Scheme{SchemeKind::rusanov});
    const double dx = 1.0 / n;
    const double dt = 0.2 * dx;

    const auto flux_only = step_uniform_combined(v, HTerms{std::vector<double>(n, 0.0)}, c, dt, dx);
    const auto plain = oracle::plain_fv_step(oracle::to_vector(v.values()), dt, dx, [&](double a, double b) {
        return interface_coeffs(p, a, b, Scheme{SchemeKind::rusanov}).Fhat;
    });
    for (std::size_t i = 0; i < n; ++i) CHECK(flux_only[i] == doctest::Approx(plain[i]).epsilon(1e-14));

    const auto mesh = Mesh1D(oracle::random_interfaces(rng, n, 0, 1));
    const auto moved = Mesh1D(oracle::random_move(rng, oracle::to_vector(mesh.interfaces()), 0.8));
    const auto h = h_terms(v, mesh, edge_displacements(mesh, moved));
    const auto remap_only = step_uniform_combined(v, h, c, 0.0, dx);
    const auto remapped = remap_v_via_h(v, h);
    for (std::size_t i = 0; i < n; ++i) CHECK(remap_only[i] == doctest::Approx(remapped[i]).epsilon(1e-14).scale(1.0));
}

TEST_CASE("combined step matches the physical-frame update")
{
    const auto p = Problem::burgers();
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 40;
        const Mesh1D mesh(oracle::random_interfaces(rng, n, -1, 2));
        const Mesh1D next(oracle::random_move(rng, oracle::to_vector(mesh.interfaces()), 0.9, 0.6));
        const CellField u(oracle::random_values(rng, n, -1, 1), Frame::physical);
        const auto ref = to_reference(mesh, u);
        const auto h = h_terms(ref.v, mesh, edge_displacements(mesh, next));
        const auto u_hat = remap_u(mesh, next, u);
        const auto c = all_interface_coeffs(p, to_reference(next, u_hat).v, Scheme{SchemeKind::rusanov});
        const double dt = 0.1 * next.min_width();

        const auto a = step_uniform_combined(ref.v, h, c, dt, ref.dx);
        const auto b = to_reference(next, step_nonuniform(next, u_hat, c, dt)).v;
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("incremental form equals the flux difference")
{
    std::mt19937_64 rng(45);
    for (const auto& s : {Scheme{SchemeKind::entropy_conservative}, Scheme{SchemeKind::rusanov},
                          Scheme{SchemeKind::fixed_d, 0.4}}) {
        const CellField v(oracle::random_values(rng, 25, -2, 2), Frame::reference);
        const auto c = all_interface_coeffs(Problem::burgers(), v, s);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double direct = c[i].Fhat - c[(i + c.size() - 1) % c.size()].Fhat;
            CHECK(incremental_flux_difference(c, i) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("static uniform mesh reproduces the plain finite-volume scheme")
{
    const auto p = Problem::burgers();
    auto state = riemann_state(32, 1.0, 0.0);
    StepOptions opt;
    opt.adapt = false;
    std::vector<double> u = oracle::to_vector(state.u.values());
    for (int k = 0; k < 20; ++k) {
        const auto out = mas_step(state, p, opt);
        u = oracle::plain_fv_step(u, out.report.dt, state.ref.dx, [&](double a, double b) {
            return interface_coeffs(p, a, b, opt.scheme).Fhat;
        });
        state = out.state;
        CHECK(out.report.theta == 1.0);
        for (std::size_t i = 0; i < u.size(); ++i) CHECK(state.u[i] == doctest::Approx(u[i]).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("constant data on a uniform mesh is a fixed point")
{
    // Exact up to roundoff, which the monitor feeds back into the mesh.
    const auto mesh = Mesh1D::uniform(0.0, 1.0, 6);
    auto state = MasState::initial(mesh, CellField(std::vector<double>(6, 0.6), Frame::physical));
    StepOptions opt;
    for (int k = 0; k < 5; ++k) {
        state = mas_step(state, Problem::burgers(), opt).state;
        for (std::size_t j = 0; j <= 6; ++j) CHECK(state.mesh.interface(j) == doctest::Approx(mesh.interface(j)).epsilon(1e-13).scale(1.0));
        for (std::size_t i = 0; i < 6; ++i) CHECK(state.u[i] == doctest::Approx(0.6).epsilon(1e-13));
    }
}

TEST_CASE("constant data on a non-uniform mesh is not preserved")
{
    // Fluxes act on reference values dx v = h u, which vary with h even when u is flat.
    const auto mesh = Mesh1D({0.0, 0.1, 0.35, 0.4, 0.7, 0.85, 1.0});
    const auto state = MasState::initial(mesh, CellField(std::vector<double>(6, 0.6), Frame::physical));
    StepOptions opt;
    opt.adapt = false;
    const auto out = mas_step(state, Problem::burgers(), opt);
    double spread = 0.0;
    for (std::size_t i = 0; i < 6; ++i) spread = std::max(spread, std::abs(out.state.u[i] - 0.6));
    CHECK(spread > 1e-3);
    CHECK(out.report.total_mass == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("adaptive steps conserve mass and the reference pair")
{
    const auto p = Problem::burgers();
    auto state = riemann_state(50, 1.0, 0.0);
    const double m0 = total_mass(state);
    StepOptions opt;
    for (int k = 0; k < 40; ++k) {
        const auto out = mas_step(state, p, opt);
        state = out.state;
        CHECK(out.report.total_mass == doctest::Approx(total_mass(state)).epsilon(1e-15));
        CHECK(std::abs(total_mass(state) - m0) <= 1e-13 * m0);
        CHECK(out.report.max_gcl_residual <= 1e-13);
        CHECK(out.report.dt > 0.0);
        CHECK(state.step == static_cast<std::size_t>(k + 1));
    }
    CHECK(state.t > 0.0);
    CHECK(state.qstar_max > 0.0);
}

TEST_CASE("time step respects the cap and the policy")
{
    const auto p = Problem::burgers();
    const auto state = riemann_state(40, 1.0, 0.0);
    StepOptions opt;
    opt.adapt = false;
    opt.dt_cap = 1e-5;
    CHECK(mas_step(state, p, opt).report.dt == 1e-5);

    opt.dt_cap = std::numeric_limits<double>::infinity();
    const double appendix = mas_step(state, p, opt).report.dt;
    opt.dt_policy = DtPolicy::sufficient;
    const double sufficient = mas_step(state, p, opt).report.dt;
    CHECK(sufficient <= appendix);
    CHECK(sufficient > 0.0);

    opt.cfl_target = 1.5;
    CHECK_THROWS_AS(mas_step(state, p, opt), ConfigError);
}

TEST_CASE("enforced steps satisfy the condition")
{
    const auto p = Problem::burgers();
    auto state = riemann_state(60, 1.0, 0.0);
    StepOptions opt;
    opt.enforce = true;
    opt.dt_policy = DtPolicy::sufficient;
    double entropy = 0.0;
    for (std::size_t i = 0; i < 60; ++i) entropy += state.ref.dx * 0.5 * state.ref.v[i] * state.ref.v[i];
    for (int k = 0; k < 40; ++k) {
        const auto out = mas_step(state, p, opt);
        CHECK(out.report.violations == 0);
        CHECK(out.report.total_entropy <= entropy + 1e-12);
        entropy = out.report.total_entropy;
        state = out.state;
    }
}

}
