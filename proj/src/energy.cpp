#include "mphase/energy.hpp"

#include <cmath>

namespace mphase {

EnergyModel::EnergyModel(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                         GradientModel model)
    : grid_(&g), spec_(&spec), p_(&p), model_(model) {
    if (p.values.size() != static_cast<std::size_t>(g.cells()))
        throw DomainError("energy model: exponent field size mismatch");
    if (model_ == GradientModel::Face) {
        face_phases_.resize(spec.phases.size());
        for (std::size_t j = 0; j < spec.phases.size(); ++j) {
            FacePhase& fp = face_phases_[j];
            fp.wx.resize(static_cast<std::size_t>(g.x_face_count()));
            fp.px.resize(fp.wx.size());
            fp.wy.resize(static_cast<std::size_t>(g.y_face_count()));
            fp.py.resize(fp.wy.size());
            const Phase& ph = spec.phases[j];
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix + 1 < g.nx; ++ix) {
                    const int l = g.idx(ix, iy), r = g.idx(ix + 1, iy), f = g.xf(ix, iy);
                    fp.wx[f] = 0.5 * (ph.weight[l] + ph.weight[r]);
                    fp.px[f] = 0.5 * (ph.exponent.values[l] + ph.exponent.values[r]);
                }
            for (int iy = 0; iy + 1 < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const int b = g.idx(ix, iy), t = g.idx(ix, iy + 1), f = g.yf(ix, iy);
                    fp.wy[f] = 0.5 * (ph.weight[b] + ph.weight[t]);
                    fp.py[f] = 0.5 * (ph.exponent.values[b] + ph.exponent.values[t]);
                }
        }
    }
}

double EnergyModel::face_potential_x(int f, double s) const {
    if (s == 0.0) return 0.0;
    double v = 0.0;
    for (const FacePhase& fp : face_phases_) v += fp.wx[f] * std::pow(s, fp.px[f]) / fp.px[f];
    return v;
}

double EnergyModel::face_potential_y(int f, double s) const {
    if (s == 0.0) return 0.0;
    double v = 0.0;
    for (const FacePhase& fp : face_phases_) v += fp.wy[f] * std::pow(s, fp.py[f]) / fp.py[f];
    return v;
}

double EnergyModel::face_phi_x(int f, double s) const {
    if (s == 0.0) return 0.0;
    double v = 0.0;
    for (const FacePhase& fp : face_phases_) v += fp.wx[f] * std::pow(s, fp.px[f] - 1.0);
    return v;
}

double EnergyModel::face_phi_y(int f, double s) const {
    if (s == 0.0) return 0.0;
    double v = 0.0;
    for (const FacePhase& fp : face_phases_) v += fp.wy[f] * std::pow(s, fp.py[f] - 1.0);
    return v;
}

double EnergyModel::flux_energy(const GridFunction& v) const {
    const Grid& g = *grid_;
    double sum = 0.0;
    if (model_ == GradientModel::Face) {
        const VectorField f = mphase::gradient(g, v);
        for (int k = 0; k < g.x_face_count(); ++k) sum += face_potential_x(k, std::abs(f.x[k]));
        for (int k = 0; k < g.y_face_count(); ++k) sum += face_potential_y(k, std::abs(f.y[k]));
    } else {
        const GridFunction s = gradient_magnitude(g, v);
        for (int i = 0; i < g.cells(); ++i) sum += potential_scalar(*spec_, i, s[i]);
    }
    return sum * g.cell_measure();
}

VectorField EnergyModel::flux_field(const GridFunction& v) const {
    const Grid& g = *grid_;
    const VectorField f = mphase::gradient(g, v);
    VectorField q = VectorField::zeros(g);
    if (model_ == GradientModel::Face) {
        for (int k = 0; k < g.x_face_count(); ++k) {
            const double d = f.x[k];
            q.x[k] = (d >= 0.0 ? 1.0 : -1.0) * face_phi_x(k, std::abs(d));
        }
        for (int k = 0; k < g.y_face_count(); ++k) {
            const double d = f.y[k];
            q.y[k] = (d >= 0.0 ? 1.0 : -1.0) * face_phi_y(k, std::abs(d));
        }
    } else {
        // Per-cell conductance Psi(x_i, s_i) applied to each adjacent face,
        // written as Phi(s_i) * (F/s_i) so phases with p_j < 2 stay finite
        // where the local gradient vanishes.
        const GridFunction s = gradient_magnitude(g, v);
        GridFunction phis(s.size(), 0.0);
        for (int i = 0; i < g.cells(); ++i)
            phis[i] = s[i] > 0.0 ? phi(*spec_, i, s[i]) / s[i] : 0.0;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix + 1 < g.nx; ++ix) {
                const int l = g.idx(ix, iy), r = g.idx(ix + 1, iy), k = g.xf(ix, iy);
                q.x[k] = 0.5 * (phis[l] + phis[r]) * f.x[k];
            }
        for (int iy = 0; iy + 1 < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const int b = g.idx(ix, iy), t = g.idx(ix, iy + 1), k = g.yf(ix, iy);
                q.y[k] = 0.5 * (phis[b] + phis[t]) * f.y[k];
            }
    }
    return q;
}

GridFunction EnergyModel::apply_flux_operator(const GridFunction& v) const {
    GridFunction d = divergence(*grid_, flux_field(v));
    for (double& x : d) x = -x;
    return d;
}

double EnergyModel::energy(const GridFunction& v, const GridFunction& src, double lambda,
                           double eps) const {
    const Grid& g = *grid_;
    double sum = flux_energy(v);
    double low = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
        const double pi = p_->values[i];
        low += 0.5 * lambda * v[i] * v[i] - src[i] * v[i];
        if (eps != 0.0) low += eps * std::pow(std::abs(v[i]), pi) / pi;
    }
    return sum + low * g.cell_measure();
}

GridFunction EnergyModel::gradient(const GridFunction& v, const GridFunction& src, double lambda,
                                   double eps) const {
    const Grid& g = *grid_;
    GridFunction grad = apply_flux_operator(v);
    const double m = g.cell_measure();
    for (int i = 0; i < g.cells(); ++i) {
        double t = grad[i] + lambda * v[i] - src[i];
        if (eps != 0.0 && v[i] != 0.0) {
            const double pi = p_->values[i];
            t += eps * std::pow(std::abs(v[i]), pi - 1.0) * (v[i] > 0.0 ? 1.0 : -1.0);
        }
        grad[i] = t * m;
    }
    return grad;
}

double EnergyModel::energy_and_gradient(const GridFunction& v, const GridFunction& src,
                                        double lambda, double eps, GridFunction& grad_out) const {
    const Grid& g = *grid_;
    const VectorField f = mphase::gradient(g, v);
    VectorField q = VectorField::zeros(g);
    double a_term = 0.0;

    if (model_ == GradientModel::Face) {
        // One power per phase and face serves both the density w s^p / p and
        // the flux magnitude w s^{p-1} = (w s^p) / s.
        for (int k = 0; k < g.x_face_count(); ++k) {
            const double s = std::abs(f.x[k]);
            if (s == 0.0) continue;
            double flux_mag = 0.0;
            for (const FacePhase& fp : face_phases_) {
                const double pw = fp.wx[k] * std::pow(s, fp.px[k]);
                a_term += pw / fp.px[k];
                flux_mag += pw / s;
            }
            q.x[k] = (f.x[k] >= 0.0 ? 1.0 : -1.0) * flux_mag;
        }
        for (int k = 0; k < g.y_face_count(); ++k) {
            const double s = std::abs(f.y[k]);
            if (s == 0.0) continue;
            double flux_mag = 0.0;
            for (const FacePhase& fp : face_phases_) {
                const double pw = fp.wy[k] * std::pow(s, fp.py[k]);
                a_term += pw / fp.py[k];
                flux_mag += pw / s;
            }
            q.y[k] = (f.y[k] >= 0.0 ? 1.0 : -1.0) * flux_mag;
        }
    } else {
        const GridFunction mags = gradient_magnitude(g, v);
        GridFunction psis(mags.size(), 0.0);
        for (int i = 0; i < g.cells(); ++i) {
            const double s = mags[i];
            if (s == 0.0) continue;
            double phi_val = 0.0;
            for (const Phase& ph : spec_->phases) {
                const double pi = ph.exponent.values[i];
                const double pw = ph.weight[i] * std::pow(s, pi);
                a_term += pw / pi;
                phi_val += pw / s;
            }
            psis[i] = phi_val / s;
        }
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix + 1 < g.nx; ++ix) {
                const int l = g.idx(ix, iy), r = g.idx(ix + 1, iy), k = g.xf(ix, iy);
                q.x[k] = 0.5 * (psis[l] + psis[r]) * f.x[k];
            }
        for (int iy = 0; iy + 1 < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const int b = g.idx(ix, iy), t = g.idx(ix, iy + 1), k = g.yf(ix, iy);
                q.y[k] = 0.5 * (psis[b] + psis[t]) * f.y[k];
            }
    }

    grad_out = divergence(g, q);
    const double m = g.cell_measure();
    double low = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
        const double pi = p_->values[i];
        low += 0.5 * lambda * v[i] * v[i] - src[i] * v[i];
        double t = -grad_out[i] + lambda * v[i] - src[i];
        if (eps != 0.0 && v[i] != 0.0) {
            const double av = std::abs(v[i]);
            const double pw = std::pow(av, pi);
            low += eps * pw / pi;
            t += eps * (pw / av) * (v[i] > 0.0 ? 1.0 : -1.0);
        }
        grad_out[i] = t * m;
    }
    return (a_term + low) * m;
}

double energy(const Grid& g, const PhaseSpec& spec, const ExponentField& p, const GridFunction& v,
              const GridFunction& source, double lambda, double eps, GradientModel model) {
    return EnergyModel(g, spec, p, model).energy(v, source, lambda, eps);
}

GridFunction energy_gradient(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                             const GridFunction& v, const GridFunction& source, double lambda,
                             double eps, GradientModel model) {
    return EnergyModel(g, spec, p, model).gradient(v, source, lambda, eps);
}

} // namespace mphase
