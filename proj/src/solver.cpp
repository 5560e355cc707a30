#include "fvpost/solver.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/core.h>
#include <fmt/ostream.h>

namespace fvpost {

SpaceTimeSolution::SpaceTimeSolution(Grid1D grid, ConservationLaw model, FluxKind flux, double cfl,
                                     State ghost_left, State ghost_right)
    : grid_(grid), model_(model), flux_(flux), cfl_(cfl), ghost_left_(ghost_left), ghost_right_(ghost_right) {}

std::span<const State> SpaceTimeSolution::level(std::size_t n) const {
    return {states_.data() + n * grid_.cells, grid_.cells};
}

const State& SpaceTimeSolution::extended(std::size_t n, long j) const {
    if (j < 0) return ghost_left_;
    if (j >= static_cast<long>(grid_.cells)) return ghost_right_;
    return at(n, static_cast<std::size_t>(j));
}

State SpaceTimeSolution::interface_flux(std::size_t n, std::size_t face) const {
    if (!fluxes_.empty() && n < steps()) return fluxes_[n * (grid_.cells + 1) + face];
    const long j = static_cast<long>(face);
    return numerical_flux(flux_, model_, extended(n, j - 1), extended(n, j));
}

void SpaceTimeSolution::append_level(double t, std::span<const State> states) {
    if (states.size() != grid_.cells) {
        throw ConfigError(fmt::format("level has {} cells, grid has {}", states.size(), grid_.cells));
    }
    if (!times_.empty() && !(t > times_.back())) {
        throw ConfigError(fmt::format("time levels must increase ({} after {})", t, times_.back()));
    }
    times_.push_back(t);
    states_.insert(states_.end(), states.begin(), states.end());
}

void SpaceTimeSolution::append_fluxes(std::span<const State> fluxes) {
    fluxes_.insert(fluxes_.end(), fluxes.begin(), fluxes.end());
}

void SpaceTimeSolution::drop_flux_cache() {
    fluxes_.clear();
    fluxes_.shrink_to_fit();
}

void interface_fluxes(std::span<const State> u, const State& ghost_left, const State& ghost_right,
                      const ConservationLaw& model, FluxKind flux, std::span<State> out) {
    const std::size_t J = u.size();
    out[0] = numerical_flux(flux, model, ghost_left, u[0]);
    for (std::size_t j = 1; j < J; ++j) out[j] = numerical_flux(flux, model, u[j - 1], u[j]);
    out[J] = numerical_flux(flux, model, u[J - 1], ghost_right);
}

namespace {

void advance(std::span<const State> u, std::span<const State> F, const ConservationLaw& model, double ratio,
             double t_new, std::span<State> out) {
    for (std::size_t j = 0; j < u.size(); ++j) {
        out[j] = u[j] - ratio * (F[j + 1] - F[j]);
        if (!model.in_domain(out[j])) {
            throw DomainError(fmt::format("state ({}, {}) in cell {} at t = {} left the {} domain", out[j][0],
                                          out[j][1], j, t_new, model.name()));
        }
    }
}

void check_initial(std::span<const State> u, const ConservationLaw& model, FluxKind flux, const Grid1D& grid,
                   const MarchOptions& options) {
    check_flux_supported(flux, model);
    if (u.size() != grid.cells) {
        throw ConfigError(fmt::format("initial data has {} cells, grid has {}", u.size(), grid.cells));
    }
    if (!(options.T > options.t0)) {
        throw ConfigError(fmt::format("final time {} must exceed start time {}", options.T, options.t0));
    }
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!model.in_domain(u[j])) throw DomainError(fmt::format("initial state in cell {} outside the domain", j));
    }
}

// Shared marching loop. `on_step` receives (u^n, fluxes, u^{n+1}, t^{n+1}).
template <class OnStep>
std::size_t march(std::vector<State> u, const ConservationLaw& model, FluxKind flux, const Grid1D& grid,
                  const MarchOptions& options, OnStep&& on_step) {
    const State gl = u.front(), gr = u.back();
    std::vector<State> F(grid.cells + 1), next(grid.cells);
    double t = options.t0;
    std::size_t n = 0;
    while (t < options.T) {
        double dt = cfl_timestep(u, gl, gr, model, grid, options.cfl, options.T - t);
        double t_new = t + dt;
        if (t_new >= options.T || options.T - t_new < 1e-12 * (options.T - options.t0)) {
            t_new = options.T;
            dt = options.T - t;
        }
        interface_fluxes(u, gl, gr, model, flux, F);
        advance(u, F, model, dt / grid.dx, t_new, next);
        on_step(std::span<const State>(u), std::span<const State>(F), std::span<const State>(next), t_new);
        u.swap(next);
        t = t_new;
        ++n;
    }
    return n;
}

}  // namespace

std::vector<State> step(std::span<const State> u, const State& ghost_left, const State& ghost_right,
                        const ConservationLaw& model, FluxKind flux, const Grid1D& grid, double dt) {
    std::vector<State> F(u.size() + 1), out(u.size());
    interface_fluxes(u, ghost_left, ghost_right, model, flux, F);
    advance(u, F, model, dt / grid.dx, dt, out);
    return out;
}

SpaceTimeSolution run(std::vector<State> initial, const ConservationLaw& model, FluxKind flux, const Grid1D& grid,
                      const MarchOptions& options) {
    check_initial(initial, model, flux, grid, options);
    SpaceTimeSolution sol(grid, model, flux, options.cfl, initial.front(), initial.back());
    sol.append_level(options.t0, initial);
    march(std::move(initial), model, flux, grid, options,
          [&](std::span<const State>, std::span<const State> F, std::span<const State> next, double t) {
              if (options.cache_fluxes) sol.append_fluxes(F);
              sol.append_level(t, next);
          });
    return sol;
}

std::size_t run_streaming(std::vector<State> initial, const ConservationLaw& model, FluxKind flux,
                          const Grid1D& grid, const MarchOptions& options, const LevelObserver& observer) {
    check_initial(initial, model, flux, grid, options);
    observer(0, options.t0, initial);
    std::size_t n = 0;
    march(std::move(initial), model, flux, grid, options,
          [&](std::span<const State>, std::span<const State>, std::span<const State> next, double t) {
              observer(++n, t, next);
          });
    return n + 1;
}

void write_solution(std::ostream& os, const SpaceTimeSolution& sol) {
    const auto& g = sol.grid();
    const std::size_t m = sol.components();
    fmt::print(os, "# fvpost-solution 1\n");
    fmt::print(os, "# model={}\n# flux={}\n# cfl={:.17g}\n", sol.model().name(), to_string(sol.flux_kind()), sol.cfl());
    fmt::print(os, "# pressure_constant={:.17g}\n# gamma={:.17g}\n", sol.model().pressure_constant(),
               sol.model().gamma());
    fmt::print(os, "# x_min={:.17g}\n# x_max={:.17g}\n# cells={}\n# levels={}\n", g.x_min, g.x_max, g.cells,
               sol.levels());
    fmt::print(os, "# ghost_left={:.17g},{:.17g}\n# ghost_right={:.17g},{:.17g}\n", sol.ghost_left()[0],
               sol.ghost_left()[1], sol.ghost_right()[0], sol.ghost_right()[1]);
    for (std::size_t n = 0; n < sol.levels(); ++n) {
        fmt::print(os, "{:.17g}", sol.time(n));
        for (const auto& u : sol.level(n)) {
            for (std::size_t c = 0; c < m; ++c) fmt::print(os, " {:.17g}", u[c]);
        }
        os << '\n';
    }
}

SpaceTimeSolution read_solution(std::istream& is) {
    std::map<std::string, std::string> header;
    std::string line;
    while (is.peek() == '#' && std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        header[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    auto get = [&](const std::string& key) {
        const auto it = header.find(key);
        if (it == header.end()) throw ConfigError(fmt::format("solution dump lacks '{}'", key));
        return it->second;
    };
    auto pair = [&](const std::string& key) {
        const std::string v = get(key);
        const auto comma = v.find(',');
        return make_state(std::stod(v.substr(0, comma)), std::stod(v.substr(comma + 1)));
    };

    ConservationLaw model = get("model") == "burgers"
                                ? ConservationLaw::burgers()
                                : ConservationLaw::psystem(std::stod(get("pressure_constant")), std::stod(get("gamma")));
    const Grid1D grid = uniform_grid(std::stod(get("x_min")), std::stod(get("x_max")), std::stoul(get("cells")));
    const std::size_t levels = std::stoul(get("levels"));
    SpaceTimeSolution sol(grid, model, parse_flux_kind(get("flux")), std::stod(get("cfl")), pair("ghost_left"),
                          pair("ghost_right"));

    const std::size_t m = model.components();
    std::vector<State> row(grid.cells);
    for (std::size_t n = 0; n < levels; ++n) {
        if (!std::getline(is, line)) throw ConfigError(fmt::format("solution dump truncated at level {}", n));
        std::istringstream ls(line);
        double t = 0.0;
        ls >> t;
        for (auto& u : row) {
            u = State{};
            for (std::size_t c = 0; c < m; ++c) ls >> u[c];
        }
        if (!ls) throw ConfigError(fmt::format("malformed solution row {}", n));
        sol.append_level(t, row);
    }
    return sol;
}

}  // namespace fvpost
