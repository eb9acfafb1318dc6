#include "adaptfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptfv/error.hpp"

namespace adaptfv {

Mesh1D::Mesh1D(std::vector<double> interfaces) : x_(std::move(interfaces))
{
    if (x_.size() < 2) {
        throw SizeError("Mesh1D: need at least two interfaces, got " + std::to_string(x_.size()));
    }
    require_finite(x_, "Mesh1D interfaces");
    for (std::size_t j = 0; j + 1 < x_.size(); ++j) {
        if (!(x_[j + 1] > x_[j])) {
            throw PreconditionError("Mesh1D: interfaces not strictly increasing at cell " + std::to_string(j));
        }
    }
}

Mesh1D Mesh1D::uniform(double a, double b, std::size_t n_cells)
{
    if (n_cells == 0) throw SizeError("Mesh1D::uniform: zero cells");
    if (!(b > a)) throw PreconditionError("Mesh1D::uniform: empty domain");
    std::vector<double> x(n_cells + 1);
    const double n = static_cast<double>(n_cells);
    for (std::size_t j = 0; j < n_cells; ++j) {
        x[j] = a + (b - a) * (static_cast<double>(j) / n);
    }
    x[n_cells] = b;
    return Mesh1D(std::move(x));
}

std::vector<double> Mesh1D::widths() const
{
    std::vector<double> h(cells());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = width(i);
    return h;
}

double Mesh1D::min_width() const
{
    double m = width(0);
    for (std::size_t i = 1; i < cells(); ++i) m = std::min(m, width(i));
    return m;
}

void AdaptParams::validate() const
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be finite and >= 0");
    if (smoothing_passes < 0) throw ConfigError("smoothing_passes must be >= 0");
    if (equidist_iters < 1) throw ConfigError("equidist_iters must be >= 1");
    if (!(beta > 0.0 && beta <= 0.5)) throw ConfigError("beta must lie in (0, 0.5]");
    if (!(max_weight >= 1.0)) throw ConfigError("max_weight must be >= 1");
}

std::vector<double> compute_monitor(const CellField& u, const Mesh1D& mesh, const AdaptParams& params)
{
    const std::size_t n = mesh.cells();
    if (u.size() != n) {
        throw SizeError("compute_monitor: field has " + std::to_string(u.size()) + " values, mesh has " +
                        std::to_string(n) + " cells");
    }
    if (n < 3) throw SizeError("compute_monitor: need at least 3 cells");
    require_finite(u.values(), "compute_monitor");

    // Second divided differences at cell centers; the end cells copy their neighbor.
    std::vector<double> cell_kappa(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double cl = mesh.center(i - 1);
        const double c = mesh.center(i);
        const double cr = mesh.center(i + 1);
        const double left_slope = (u[i] - u[i - 1]) / (c - cl);
        const double right_slope = (u[i + 1] - u[i]) / (cr - c);
        cell_kappa[i] = 2.0 * (right_slope - left_slope) / (cr - cl);
    }
    cell_kappa[0] = cell_kappa[1];
    cell_kappa[n - 1] = cell_kappa[n - 2];

    std::vector<double> w(n + 1);
    w[0] = 1.0 + params.alpha * std::abs(cell_kappa[0]);
    w[n] = 1.0 + params.alpha * std::abs(cell_kappa[n - 1]);
    for (std::size_t j = 1; j < n; ++j) {
        w[j] = 1.0 + params.alpha * std::abs(0.5 * (cell_kappa[j - 1] + cell_kappa[j]));
    }

    // Curvature grows like 1/h at a kink and 1/h^2 at a jump, so an unbounded
    // weight keeps compressing the cells there.
    for (double& x : w) x = std::min(x, params.max_weight);

    // The two boundary interfaces are one point of the periodic ring.
    const double ends = 0.5 * (w[0] + w[n]);
    w[0] = ends;
    w[n] = ends;

    std::vector<double> tmp(n);
    for (int pass = 0; pass < params.smoothing_passes; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            const double wl = w[wrap(static_cast<std::ptrdiff_t>(j) - 1, n)];
            const double wr = w[j + 1 == n ? 0 : j + 1];
            tmp[j] = 0.25 * (wl + 2.0 * w[j] + wr);
        }
        std::copy(tmp.begin(), tmp.end(), w.begin());
        w[n] = w[0];
    }
    return w;
}

namespace {

// Inverts the piecewise-linear cumulative monitor. Cell i carries the
// constant density (w_i + w_{i+1}) / 2.
Mesh1D equidistribute(const Mesh1D& mesh, std::span<const double> w)
{
    const std::size_t n = mesh.cells();
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    if (*lo == *hi) return Mesh1D::uniform(mesh.left(), mesh.right(), n);

    std::vector<double> density(n);
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        density[i] = 0.5 * (w[i] + w[i + 1]);
        cumulative[i + 1] = cumulative[i] + density[i] * mesh.width(i);
    }
    const double total = cumulative[n];

    std::vector<double> x(n + 1);
    x[0] = mesh.left();
    x[n] = mesh.right();
    std::size_t cell = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const double target = total * (static_cast<double>(k) / static_cast<double>(n));
        while (cell + 1 < n && cumulative[cell + 1] <= target) ++cell;
        const double pos = mesh.interface(cell) + (target - cumulative[cell]) / density[cell];
        x[k] = std::clamp(pos, mesh.interface(cell), mesh.interface(cell + 1));
    }
    for (std::size_t k = 1; k <= n; ++k) {
        if (!(x[k] > x[k - 1])) {
            throw InternalError("equidistribute: produced a degenerate cell at " + std::to_string(k - 1));
        }
    }
    return Mesh1D(std::move(x));
}

} // namespace

Mesh1D reconstruct_mesh(const Mesh1D& mesh, const CellField& u, const AdaptParams& params)
{
    params.validate();
    const std::size_t n = mesh.cells();
    if (u.size() != n) throw SizeError("reconstruct_mesh: field/mesh size mismatch");

    Mesh1D candidate = mesh;
    CellField field = u;
    for (int it = 0; it < params.equidist_iters; ++it) {
        const auto w = compute_monitor(field, candidate, params);
        candidate = equidistribute(candidate, w);
        if (it + 1 < params.equidist_iters) field = project_cell_averages(mesh, u, candidate);
    }

    std::vector<double> x(mesh.interfaces().begin(), mesh.interfaces().end());
    for (std::size_t j = 1; j < n; ++j) {
        const double limit = params.beta * std::min(mesh.width(j - 1), mesh.width(j));
        const double d = candidate.interface(j) - mesh.interface(j);
        if (std::abs(d) > limit) x[j] = mesh.interface(j) + std::copysign(limit, d);
        else x[j] = candidate.interface(j);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i + 1] > x[i])) {
            throw InternalError("reconstruct_mesh: non-positive width in cell " + std::to_string(i));
        }
    }
    return Mesh1D(std::move(x));
}

std::vector<double> edge_displacements(const Mesh1D& old_mesh, const Mesh1D& new_mesh)
{
    if (old_mesh.cells() != new_mesh.cells()) {
        throw SizeError("edge_displacements: meshes have " + std::to_string(old_mesh.cells()) + " and " +
                        std::to_string(new_mesh.cells()) + " cells");
    }
    if (old_mesh.left() != new_mesh.left() || old_mesh.right() != new_mesh.right()) {
        throw SizeError("edge_displacements: domain endpoints differ");
    }
    const std::size_t n = old_mesh.cells();
    std::vector<double> d(n + 1, 0.0);
    for (std::size_t j = 1; j < n; ++j) d[j] = new_mesh.interface(j) - old_mesh.interface(j);
    return d;
}

SignedParts positive_negative_parts(double d)
{
    if (!std::isfinite(d)) throw NumericError("positive_negative_parts: non-finite displacement");
    return {std::max(d, 0.0), std::max(-d, 0.0)};
}

Mesh1D blend_meshes(const Mesh1D& old_mesh, const Mesh1D& next_mesh, double theta)
{
    if (theta == 1.0) return next_mesh;
    if (theta == 0.0) return old_mesh;
    const auto d = edge_displacements(old_mesh, next_mesh);
    std::vector<double> x(old_mesh.interfaces().begin(), old_mesh.interfaces().end());
    for (std::size_t j = 1; j + 1 < x.size(); ++j) x[j] += theta * d[j];
    return Mesh1D(std::move(x));
}

CellField project_cell_averages(const Mesh1D& from, const CellField& u, const Mesh1D& to)
{
    if (u.size() != from.cells()) throw SizeError("project_cell_averages: field/mesh size mismatch");
    if (from.left() != to.left() || from.right() != to.right()) {
        throw SizeError("project_cell_averages: domain endpoints differ");
    }
    std::vector<double> out(to.cells(), 0.0);
    std::size_t src = 0;
    for (std::size_t i = 0; i < to.cells(); ++i) {
        const double lo = to.interface(i);
        const double hi = to.interface(i + 1);
        while (src + 1 < from.cells() && from.interface(src + 1) <= lo) ++src;
        double mass = 0.0;
        for (std::size_t k = src; k < from.cells() && from.interface(k) < hi; ++k) {
            const double overlap = std::min(hi, from.interface(k + 1)) - std::max(lo, from.interface(k));
            if (overlap > 0.0) mass += overlap * u[k];
        }
        out[i] = mass / (hi - lo);
    }
    return CellField(std::move(out), u.frame());
}

} // namespace adaptfv
