#include "mphase/grid.hpp"

#include <cmath>
#include <string>

namespace mphase {

Grid::Grid(int nx, int ny, double hx, double hy) : nx(nx), ny(ny), hx(hx), hy(hy) {
    if (nx < 1 || ny < 1 || nx * ny < 2)
        throw DomainError("grid needs at least 2 cells (got " + std::to_string(nx) + "x" +
                          std::to_string(ny) + ")");
    if (!(hx > 0.0) || !(hy > 0.0))
        throw DomainError("grid spacings must be positive");
}

Grid Grid::unit_square(int nx, int ny) { return Grid(nx, ny, 1.0 / nx, 1.0 / ny); }

VectorField gradient(const Grid& g, const GridFunction& u) {
    VectorField f = VectorField::zeros(g);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix + 1 < g.nx; ++ix)
            f.x[g.xf(ix, iy)] = (u[g.idx(ix + 1, iy)] - u[g.idx(ix, iy)]) / g.hx;
    for (int iy = 0; iy + 1 < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix)
            f.y[g.yf(ix, iy)] = (u[g.idx(ix, iy + 1)] - u[g.idx(ix, iy)]) / g.hy;
    return f;
}

GridFunction divergence(const Grid& g, const VectorField& f) {
    GridFunction d(static_cast<std::size_t>(g.cells()), 0.0);
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const double fr = (ix + 1 < g.nx) ? f.x[g.xf(ix, iy)] : 0.0;
            const double fl = (ix > 0) ? f.x[g.xf(ix - 1, iy)] : 0.0;
            const double ft = (iy + 1 < g.ny) ? f.y[g.yf(ix, iy)] : 0.0;
            const double fb = (iy > 0) ? f.y[g.yf(ix, iy - 1)] : 0.0;
            d[g.idx(ix, iy)] = (fr - fl) / g.hx + (ft - fb) / g.hy;
        }
    }
    return d;
}

double integrate(const Grid& g, const GridFunction& u) {
    double s = 0.0;
    for (double v : u) s += v;
    return s * g.cell_measure();
}

double dot_cells(const Grid& g, const GridFunction& u, const GridFunction& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s * g.cell_measure();
}

double dot_faces(const Grid& g, const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i];
    for (std::size_t i = 0; i < a.y.size(); ++i) s += a.y[i] * b.y[i];
    return s * g.cell_measure();
}

GridFunction gradient_magnitude(const Grid& g, const GridFunction& u) {
    const VectorField f = gradient(g, u);
    GridFunction s(static_cast<std::size_t>(g.cells()), 0.0);
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            double q = 0.0;
            if (g.nx > 1) {
                const double fr = (ix + 1 < g.nx) ? f.x[g.xf(ix, iy)] : 0.0;
                const double fl = (ix > 0) ? f.x[g.xf(ix - 1, iy)] : 0.0;
                q += 0.5 * (fr * fr + fl * fl);
            }
            if (g.ny > 1) {
                const double ft = (iy + 1 < g.ny) ? f.y[g.yf(ix, iy)] : 0.0;
                const double fb = (iy > 0) ? f.y[g.yf(ix, iy - 1)] : 0.0;
                q += 0.5 * (ft * ft + fb * fb);
            }
            s[g.idx(ix, iy)] = std::sqrt(q);
        }
    }
    return s;
}

double max_abs(const GridFunction& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const GridFunction& u, const GridFunction& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

double l2_norm(const Grid& g, const GridFunction& u) { return std::sqrt(dot_cells(g, u, u)); }

double box_violation(const GridFunction& u, double lo, double hi) {
    double m = 0.0;
    for (double v : u) {
        if (v < lo) m = std::max(m, lo - v);
        if (v > hi) m = std::max(m, v - hi);
    }
    return m;
}

} // namespace mphase
