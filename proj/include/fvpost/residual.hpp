#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fvpost/solver.hpp"

namespace fvpost {

// Coefficients of v = a1 + a2 (t^{n+1} - t)/dt + a3 (x - x_j)/dx on one space-time cell.
struct TestFunctionCoefficients {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;

    // Evaluate at local coordinates s = (t - t^n)/dt in [0,1] and r = (x - x_{j-1/2})/dx in [0,1].
    double value(double s, double r) const { return alpha1 + alpha2 * (1.0 - s) + alpha3 * (r - 0.5); }
};

// Averages of a test function over the left edge, the top edge and the right edge of a cell.
struct EdgeAverages {
    double left = 0.0;
    double top = 0.0;
    double right = 0.0;
};

TestFunctionCoefficients projection_coefficients(const EdgeAverages& averages);
EdgeAverages edge_averages(const TestFunctionCoefficients& coefficients);

// B_j^n applied to a test function given through its three edge averages.
State weak_residual(const SpaceTimeSolution& sol, FluxKind residual_flux, std::size_t j, std::size_t n,
                    const EdgeAverages& phi);

// Computable operator-norm bound of B_j^n (componentwise).
State local_residual_bound(const SpaceTimeSolution& sol, FluxKind residual_flux, std::size_t j, std::size_t n);

struct EntropyTriplet {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;

    double lower_bound() const;
};

EntropyTriplet local_entropy_triplet(const SpaceTimeSolution& sol, FluxKind residual_flux, std::size_t j,
                                     std::size_t n);

// Componentwise total variation of level n, ghost interfaces included.
State total_variation(const SpaceTimeSolution& sol, std::size_t n);
double total_variation_scalar(const SpaceTimeSolution& sol, std::size_t n);

struct ResidualReport {
    FluxKind residual_flux = FluxKind::LaxFriedrichs;
    std::size_t cells = 0;
    std::size_t steps = 0;

    // Per step n (already scaled by 1/dt).
    std::vector<double> beta_n;
    std::vector<double> eta_n;
    // Per level.
    std::vector<double> tv;

    double beta = 0.0;
    double eta = 0.0;
    double max_ratio = 0.0;  // max dt/dx
    double C = 3.0;
    double tv_max = 0.0;
    double epsilon = 0.0;

    // Optional per-cell fields, indexed n * cells + j.
    std::vector<State> bound;
    std::vector<EntropyTriplet> triplets;
    bool has_cells() const { return !bound.empty(); }
};

// Algorithm for the consistency parameter. The residual flux defaults to the marching flux.
ResidualReport epsilon(const SpaceTimeSolution& sol, std::optional<FluxKind> residual_flux = std::nullopt,
                       bool keep_cells = false);

// Brute-force sup of |B_j^n| over the normalized test box with alpha1 = 0.
State corner_norm_oracle(const SpaceTimeSolution& sol, FluxKind residual_flux, std::size_t j, std::size_t n);

// Continuous test function on the slab [t^n, t^{n+1}]: piecewise linear in x with values at the
// J+1 faces, plus time_slope * (t - t^n).
struct SlabTestFunction {
    std::vector<double> face_values;
    double time_slope = 0.0;

    double value(const Grid1D& grid, double t_rel, double x) const;
};

// Sum over j of B_j^n(phi) using edge averages.
State global_weak_residual(const SpaceTimeSolution& sol, FluxKind residual_flux, std::size_t n,
                           const SlabTestFunction& phi);

// The same quantity from the undivided weak form integrated by quadrature over the slab,
// plus the two outer flux terms.
State global_weak_residual_direct(const SpaceTimeSolution& sol, FluxKind residual_flux, std::size_t n,
                                  const SlabTestFunction& phi);

// CSV of per-cell fields: n,j,t,x,bound_0..bound_{m-1},E1,E2,E3,entropy_lower.
void write_residual_cells(std::ostream& os, const SpaceTimeSolution& sol, const ResidualReport& report);

}  // namespace fvpost
