#pragma once

#include <vector>

#include "adaptfv/field.hpp"
#include "adaptfv/mesh.hpp"

namespace adaptfv {

/// Values v on the uniform mesh of width dx = (b-a)/N that hold the same
/// per-cell mass as the physical pair: dx * v_i = h_i * u_i.
struct ReferencePair {
    double dx = 0.0;
    CellField v;
};

ReferencePair to_reference(const Mesh1D& mesh, const CellField& u);

CellField from_reference(const Mesh1D& mesh, const ReferencePair& ref);

/// dx * v_i - h_i * u_i per cell. Never throws on mismatched values; only on sizes.
std::vector<double> gcl_residual(const Mesh1D& mesh, const CellField& u, const ReferencePair& ref);

} // namespace adaptfv
