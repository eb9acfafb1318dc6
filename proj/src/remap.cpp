#include "adaptfv/remap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptfv/error.hpp"

namespace adaptfv {

namespace {

void require_displacement_cap(const Mesh1D& old_mesh, std::span<const double> d)
{
    const std::size_t n = old_mesh.cells();
    for (std::size_t j = 1; j < n; ++j) {
        const double limit = std::min(old_mesh.width(j - 1), old_mesh.width(j));
        if (!(std::abs(d[j]) < limit)) {
            throw PreconditionError("remap: interface " + std::to_string(j) + " moves by " + std::to_string(d[j]) +
                                    ", not below neighbor width " + std::to_string(limit));
        }
    }
}

} // namespace

CellField remap_u(const Mesh1D& old_mesh, const Mesh1D& new_mesh, const CellField& u)
{
    const std::size_t n = old_mesh.cells();
    if (u.size() != n) throw SizeError("remap_u: field/mesh size mismatch");
    const auto d = edge_displacements(old_mesh, new_mesh);
    require_displacement_cap(old_mesh, d);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto right = positive_negative_parts(d[i + 1]);
        const auto left = positive_negative_parts(d[i]);
        const double u_left = u[wrap(static_cast<std::ptrdiff_t>(i) - 1, n)];
        const double u_right = u[wrap(static_cast<std::ptrdiff_t>(i) + 1, n)];
        const double mass = old_mesh.width(i) * u[i] - right.minus * u[i] + right.plus * u_right +
                            left.minus * u_left - left.plus * u[i];
        out[i] = mass / new_mesh.width(i);
    }
    return CellField(std::move(out), Frame::physical);
}

HTerms h_terms(const CellField& v, const Mesh1D& old_mesh, std::span<const double> displacements)
{
    const std::size_t n = old_mesh.cells();
    if (v.size() != n || displacements.size() != n + 1) throw SizeError("h_terms: size mismatch");
    HTerms h{std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kr = k + 1 == n ? 0 : k + 1;
        const auto parts = positive_negative_parts(displacements[k + 1]);
        h.values[k] = parts.minus / old_mesh.width(k) * v[k] - parts.plus / old_mesh.width(kr) * v[kr];
    }
    return h;
}

CellField remap_v_via_h(const CellField& v, const HTerms& h)
{
    const std::size_t n = v.size();
    if (h.size() != n) throw SizeError("remap_v_via_h: size mismatch");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = v[i] + h[wrap(static_cast<std::ptrdiff_t>(i) - 1, n)] - h[i];
    }
    return CellField(std::move(out), Frame::reference);
}

} // namespace adaptfv
