#pragma once

#include <span>
#include <vector>

#include "adaptfv/field.hpp"
#include "adaptfv/mesh.hpp"

namespace adaptfv {

/// Mass exchanged across each periodic interface k+1/2 (between cells k and
/// k+1 mod N) by the mesh motion, in reference-solution units.
struct HTerms {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
};

/// Conservative piecewise-constant remap of u from old_mesh onto new_mesh.
/// Exact as long as every interior interface moves by less than the smaller
/// of its two old neighbor widths; otherwise throws PreconditionError.
CellField remap_u(const Mesh1D& old_mesh, const Mesh1D& new_mesh, const CellField& u);

/// H_{k+1/2} = (d_-/h_k) v_k - (d_+/h_{k+1}) v_{k+1}, with d the displacement
/// of mesh interface k+1 (one entry per mesh interface, N+1 in total).
HTerms h_terms(const CellField& v, const Mesh1D& old_mesh, std::span<const double> displacements);

/// v_hat_i = v_i + H_{i-1/2} - H_{i+1/2}.
CellField remap_v_via_h(const CellField& v, const HTerms& h);

} // namespace adaptfv
