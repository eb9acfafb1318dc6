#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adaptfv/field.hpp"

namespace adaptfv {

/// A 1D mesh of N cells stored as N+1 strictly increasing interfaces.
/// Cell i spans [x_i, x_{i+1}]; the first and last interfaces are the fixed
/// domain endpoints a and b.
class Mesh1D {
public:
    explicit Mesh1D(std::vector<double> interfaces);

    static Mesh1D uniform(double a, double b, std::size_t n_cells);

    std::size_t cells() const { return x_.size() - 1; }
    std::span<const double> interfaces() const { return x_; }
    double interface(std::size_t j) const { return x_[j]; }

    double left() const { return x_.front(); }
    double right() const { return x_.back(); }
    double length() const { return x_.back() - x_.front(); }

    double width(std::size_t i) const { return x_[i + 1] - x_[i]; }
    double center(std::size_t i) const { return 0.5 * (x_[i] + x_[i + 1]); }
    std::vector<double> widths() const;
    double min_width() const;

    /// Width of the uniform reference mesh with the same cardinality.
    double reference_width() const { return length() / static_cast<double>(cells()); }

    friend bool operator==(const Mesh1D&, const Mesh1D&) = default;

private:
    std::vector<double> x_;
};

/// Controls for the curvature-driven mesh reconstruction.
struct AdaptParams {
    double alpha = 1.0;           // monitor strength
    int smoothing_passes = 2;     // (1,2,1)/4 passes on the monitor
    int equidist_iters = 3;       // equidistribution sweeps
    double beta = 0.45;           // displacement cap as a fraction of the smaller neighbor width
    double max_weight = 20.0;     // upper clamp on the unsmoothed weights; infinity disables

    void validate() const;
};

/// Interface weights w_j = min(1 + alpha |kappa_j|, max_weight), smoothed.
/// One entry per mesh interface (N+1 values); every entry is >= 1.
std::vector<double> compute_monitor(const CellField& u, const Mesh1D& mesh, const AdaptParams& params);

/// Equidistributes the monitor and caps each interior displacement at
/// beta * min(h_{j-1}, h_j) of the old mesh. Node count and endpoints are kept.
Mesh1D reconstruct_mesh(const Mesh1D& mesh, const CellField& u, const AdaptParams& params);

/// x_j(next) - x_j(old) for every interface; boundary entries are 0.
std::vector<double> edge_displacements(const Mesh1D& old_mesh, const Mesh1D& new_mesh);

struct SignedParts {
    double plus = 0.0;   // max(d, 0)
    double minus = 0.0;  // max(-d, 0), a magnitude
};

SignedParts positive_negative_parts(double d);

/// Interfaces x_old + theta (x_next - x_old).
Mesh1D blend_meshes(const Mesh1D& old_mesh, const Mesh1D& next_mesh, double theta);

/// Exact overlap averaging of a piecewise-constant field onto another mesh
/// of the same domain. No restriction on how far interfaces move.
CellField project_cell_averages(const Mesh1D& from, const CellField& u, const Mesh1D& to);

} // namespace adaptfv
