#pragma once

#include <vector>

#include "mphase/exponent_field.hpp"
#include "mphase/grid.hpp"
#include "mphase/phase_spec.hpp"

namespace mphase {

/// Where the flux potential is sampled when assembling the energy.
///
/// Face: one potential evaluation per interior face on that face's
///   difference, with phase parameters averaged onto faces. The resulting
///   flux is a monotone function of each face difference, so the discrete
///   operator obeys comparison and box principles exactly, and for p = 2 it
///   reduces to the 5-point Neumann stencil.
/// Cell: one potential evaluation per cell on the root-mean-square of the
///   adjacent face differences. Coincides with Face for p = 2; conductances
///   couple neighboring faces for p != 2.
enum class GradientModel { Face, Cell };

/// Discrete energy
///   J(V) = sum A-term + (lambda/2) sum V^2 m + eps sum |V|^{p}/p m - sum g V m
/// with its exact gradient. References to grid/spec/p are retained; keep the
/// inputs alive for the lifetime of the model.
class EnergyModel {
public:
    EnergyModel(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                GradientModel model = GradientModel::Face);

    double energy(const GridFunction& v, const GridFunction& g, double lambda, double eps) const;

    /// Exact gradient of `energy` with respect to the cell values; each entry
    /// carries the cell measure factor.
    GridFunction gradient(const GridFunction& v, const GridFunction& g, double lambda,
                          double eps) const;

    /// The face flux field Q with <Q, grad phi> m equal to the directional
    /// derivative of the A-term.
    VectorField flux_field(const GridFunction& v) const;

    /// [-div a(x, grad V)] per cell, per unit measure.
    GridFunction apply_flux_operator(const GridFunction& v) const;

    /// Energy and gradient in one sweep; the power evaluations per face are
    /// shared, which matters inside solver loops.
    double energy_and_gradient(const GridFunction& v, const GridFunction& g, double lambda,
                               double eps, GridFunction& grad_out) const;

    /// The A-term alone: sum of potential samples times measure.
    double flux_energy(const GridFunction& v) const;

    const Grid& grid() const { return *grid_; }
    GradientModel model() const { return model_; }

private:
    const Grid* grid_;
    const PhaseSpec* spec_;
    const ExponentField* p_;
    GradientModel model_;

    // Face model: phase parameters averaged onto faces, one array pair per
    // phase and direction.
    struct FacePhase {
        std::vector<double> wx, px;
        std::vector<double> wy, py;
    };
    std::vector<FacePhase> face_phases_;

    double face_potential_x(int f, double s) const;
    double face_potential_y(int f, double s) const;
    double face_phi_x(int f, double s) const;
    double face_phi_y(int f, double s) const;
};

/// One-shot wrappers for the model above.
double energy(const Grid& g, const PhaseSpec& spec, const ExponentField& p, const GridFunction& v,
              const GridFunction& source, double lambda, double eps,
              GradientModel model = GradientModel::Face);

GridFunction energy_gradient(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                             const GridFunction& v, const GridFunction& source, double lambda,
                             double eps, GradientModel model = GradientModel::Face);

} // namespace mphase
