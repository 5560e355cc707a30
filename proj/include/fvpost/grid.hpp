#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fvpost/model.hpp"
#include "fvpost/state.hpp"

namespace fvpost {

// Uniform grid on [x_min, x_max] with `cells` cells. Cell j spans [face(j), face(j+1)].
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t cells = 1;
    double dx = 1.0;

    double face(std::size_t j) const { return x_min + static_cast<double>(j) * dx; }
    double center(std::size_t j) const { return x_min + (static_cast<double>(j) + 0.5) * dx; }
    double width(std::size_t /*j*/) const { return dx; }
    double length() const { return x_max - x_min; }
};

// Grid with 2 * 2^level cells.
Grid1D build_grid(double x_min, double x_max, unsigned level);
Grid1D uniform_grid(double x_min, double x_max, std::size_t cells);

// A space-time cell K_j^n = [t^n, t^{n+1}) x (x_{j-1/2}, x_{j+1/2}).
struct SpaceTimeCell {
    std::size_t j = 0;
    std::size_t n = 0;
};

// Largest ell-infinity wave speed over the level, including both ghost states.
double max_level_speed(std::span<const State> states, const State& ghost_left, const State& ghost_right,
                       const ConservationLaw& model);

// dt = cfl * dx / lambda_max; `max_step` is returned when the data does not propagate.
double cfl_timestep(std::span<const State> states, const State& ghost_left, const State& ghost_right,
                    const ConservationLaw& model, const Grid1D& grid, double cfl, double max_step);

}  // namespace fvpost
