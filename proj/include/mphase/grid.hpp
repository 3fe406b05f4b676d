#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mphase/errors.hpp"

namespace mphase {

/// Per-cell scalar field on a Grid, row-major, length nx*ny.
using GridFunction = std::vector<double>;

/// Rectangular cell grid with homogeneous Neumann structure.
///
/// Cells are indexed i = iy*nx + ix. Interior faces carry the normal
/// components of vector fields; boundary faces are structurally absent,
/// which encodes the zero-flux boundary condition.
struct Grid {
    int nx = 0;
    int ny = 0;
    double hx = 1.0;
    double hy = 1.0;

    Grid() = default;
    Grid(int nx, int ny, double hx, double hy);

    /// Unit-square grid with hx = 1/nx, hy = 1/ny.
    static Grid unit_square(int nx, int ny);

    int cells() const { return nx * ny; }
    double cell_measure() const { return hx * hy; }
    double domain_measure() const { return cells() * cell_measure(); }

    /// Effective spatial dimension: 1 when one direction has a single cell.
    int dim() const { return (nx > 1 ? 1 : 0) + (ny > 1 ? 1 : 0); }

    int idx(int ix, int iy) const { return iy * nx + ix; }
    std::array<double, 2> center(int i) const {
        const int ix = i % nx;
        const int iy = i / nx;
        return {(ix + 0.5) * hx, (iy + 0.5) * hy};
    }

    int x_face_count() const { return (nx - 1) * ny; }
    int y_face_count() const { return nx * (ny - 1); }
    /// Vertical face between cells (ix,iy) and (ix+1,iy), 0 <= ix < nx-1.
    int xf(int ix, int iy) const { return iy * (nx - 1) + ix; }
    /// Horizontal face between cells (ix,iy) and (ix,iy+1), 0 <= iy < ny-1.
    int yf(int ix, int iy) const { return iy * nx + ix; }
};

/// Face-based vector field: x-component on interior vertical faces,
/// y-component on interior horizontal faces. Boundary normal components
/// do not exist, so any divergence built from this field has zero flux
/// through the boundary.
struct VectorField {
    std::vector<double> x;
    std::vector<double> y;

    static VectorField zeros(const Grid& g) {
        VectorField f;
        f.x.assign(static_cast<std::size_t>(g.x_face_count()), 0.0);
        f.y.assign(static_cast<std::size_t>(g.y_face_count()), 0.0);
        return f;
    }
};

/// Forward differences on interior faces: (u_right - u_left)/hx etc.
VectorField gradient(const Grid& g, const GridFunction& u);

/// Negative adjoint of gradient: <-div F, u> m = <F, grad u> m exactly,
/// for all u and F. This identity is the discrete Neumann condition.
GridFunction divergence(const Grid& g, const VectorField& f);

/// Midpoint quadrature: sum of cell values times cell measure.
double integrate(const Grid& g, const GridFunction& u);

/// Weighted inner products matching `integrate`.
double dot_cells(const Grid& g, const GridFunction& u, const GridFunction& v);
double dot_faces(const Grid& g, const VectorField& a, const VectorField& b);

/// Per-cell gradient magnitude: root mean square of the two adjacent face
/// values per direction (absent boundary faces count as zero), summed over
/// directions. For p = 2 the cell sum of squares equals the face sum of
/// squares exactly.
GridFunction gradient_magnitude(const Grid& g, const GridFunction& u);

double max_abs(const GridFunction& u);
double max_abs_diff(const GridFunction& u, const GridFunction& v);
/// Discrete L2 norm sqrt(sum u_i^2 * measure).
double l2_norm(const Grid& g, const GridFunction& u);
/// Max distance of u from the box [lo, hi]; 0 if inside.
double box_violation(const GridFunction& u, double lo, double hi);

} // namespace mphase
