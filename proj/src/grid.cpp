#include "fvpost/grid.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace fvpost {

Grid1D uniform_grid(double x_min, double x_max, std::size_t cells) {
    if (!(x_max > x_min)) throw ConfigError(fmt::format("grid requires x_max > x_min (got [{}, {}])", x_min, x_max));
    if (cells == 0) throw ConfigError("grid requires at least one cell");
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.cells = cells;
    g.dx = (x_max - x_min) / static_cast<double>(cells);
    return g;
}

Grid1D build_grid(double x_min, double x_max, unsigned level) {
    if (level > 30) throw ConfigError(fmt::format("refinement level {} too large", level));
    return uniform_grid(x_min, x_max, std::size_t{2} << level);
}

double max_level_speed(std::span<const State> states, const State& ghost_left, const State& ghost_right,
                       const ConservationLaw& model) {
    double lambda = std::max(model.max_speed(ghost_left), model.max_speed(ghost_right));
    for (const auto& u : states) lambda = std::max(lambda, model.max_speed(u));
    return lambda;
}

double cfl_timestep(std::span<const State> states, const State& ghost_left, const State& ghost_right,
                    const ConservationLaw& model, const Grid1D& grid, double cfl, double max_step) {
    if (!(cfl > 0.0)) throw ConfigError(fmt::format("cfl must be positive (got {})", cfl));
    const double lambda = max_level_speed(states, ghost_left, ghost_right, model);
    if (lambda == 0.0) return max_step;
    return cfl * grid.dx / lambda;
}

}  // namespace fvpost
