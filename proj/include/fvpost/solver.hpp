#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "fvpost/grid.hpp"
#include "fvpost/model.hpp"
#include "fvpost/state.hpp"

namespace fvpost {

// Piecewise-constant space-time solution: one row of J cell averages per time level plus the
// two ghost states, which stay constant in time.
class SpaceTimeSolution {
public:
    SpaceTimeSolution(Grid1D grid, ConservationLaw model, FluxKind flux, double cfl, State ghost_left,
                      State ghost_right);

    const Grid1D& grid() const { return grid_; }
    const ConservationLaw& model() const { return model_; }
    FluxKind flux_kind() const { return flux_; }
    double cfl() const { return cfl_; }
    std::size_t components() const { return model_.components(); }
    std::size_t cells() const { return grid_.cells; }

    std::size_t levels() const { return times_.size(); }
    std::size_t steps() const { return levels() == 0 ? 0 : levels() - 1; }
    const std::vector<double>& times() const { return times_; }
    double time(std::size_t n) const { return times_[n]; }
    double dt(std::size_t n) const { return times_[n + 1] - times_[n]; }

    const State& ghost_left() const { return ghost_left_; }
    const State& ghost_right() const { return ghost_right_; }

    std::span<const State> level(std::size_t n) const;
    const State& at(std::size_t n, std::size_t j) const { return states_[n * grid_.cells + j]; }
    // Cell value with ghost extension: j = -1 and j = J give the outer states.
    const State& extended(std::size_t n, long j) const;

    // Interface flux F(u_{j-1}^n, u_j^n) for j = 0..J, from the marching cache when present.
    bool has_flux_cache() const { return !fluxes_.empty() || steps() == 0; }
    State interface_flux(std::size_t n, std::size_t face) const;

    void append_level(double t, std::span<const State> states);
    void append_fluxes(std::span<const State> fluxes);
    void drop_flux_cache();

private:
    Grid1D grid_;
    ConservationLaw model_;
    FluxKind flux_;
    double cfl_;
    State ghost_left_;
    State ghost_right_;
    std::vector<double> times_;
    std::vector<State> states_;
    std::vector<State> fluxes_;
};

struct MarchOptions {
    double cfl = 0.9;
    double t0 = 0.0;
    double T = 1.0;
    bool cache_fluxes = true;
};

// Interface fluxes F_{j-1/2} for j = 0..J (J+1 values) of one level.
void interface_fluxes(std::span<const State> u, const State& ghost_left, const State& ghost_right,
                      const ConservationLaw& model, FluxKind flux, std::span<State> out);

// One explicit step of the conservative scheme. Throws DomainError naming the cell if a new
// state leaves the model domain.
std::vector<State> step(std::span<const State> u, const State& ghost_left, const State& ghost_right,
                        const ConservationLaw& model, FluxKind flux, const Grid1D& grid, double dt);

// Marches from t0 to exactly T, storing every level. Ghost states are the initial end cells.
SpaceTimeSolution run(std::vector<State> initial, const ConservationLaw& model, FluxKind flux, const Grid1D& grid,
                      const MarchOptions& options);

// Same marching without storage; the observer sees every level (including the first) in order.
using LevelObserver = std::function<void(std::size_t n, double t, std::span<const State> u)>;
std::size_t run_streaming(std::vector<State> initial, const ConservationLaw& model, FluxKind flux,
                          const Grid1D& grid, const MarchOptions& options, const LevelObserver& observer);

// Plain-text dump: '#'-prefixed key=value header, then one line per level "t u_0 ... u_{J-1}"
// with the m components of each cell written consecutively.
void write_solution(std::ostream& os, const SpaceTimeSolution& sol);
SpaceTimeSolution read_solution(std::istream& is);

}  // namespace fvpost
