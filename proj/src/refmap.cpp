#include "adaptfv/refmap.hpp"

#include "adaptfv/error.hpp"

namespace adaptfv {

ReferencePair to_reference(const Mesh1D& mesh, const CellField& u)
{
    const std::size_t n = mesh.cells();
    if (u.size() != n) throw SizeError("to_reference: field/mesh size mismatch");
    const double dx = mesh.reference_width();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = mesh.width(i) * u[i] / dx;
    return {dx, CellField(std::move(v), Frame::reference)};
}

CellField from_reference(const Mesh1D& mesh, const ReferencePair& ref)
{
    const std::size_t n = mesh.cells();
    if (ref.v.size() != n) throw SizeError("from_reference: field/mesh size mismatch");
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = ref.dx * ref.v[i] / mesh.width(i);
    return CellField(std::move(u), Frame::physical);
}

std::vector<double> gcl_residual(const Mesh1D& mesh, const CellField& u, const ReferencePair& ref)
{
    const std::size_t n = mesh.cells();
    if (u.size() != n || ref.v.size() != n) throw SizeError("gcl_residual: size mismatch");
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = ref.dx * ref.v[i] - mesh.width(i) * u[i];
    return r;
}

} // namespace adaptfv
