#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "fvpost/grid.hpp"
#include "fvpost/model.hpp"
#include "fvpost/state.hpp"

namespace fvpost {

class VacuumError : public DomainError {
public:
    using DomainError::DomainError;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class WaveType { None, Shock, Rarefaction, Contact };

// One elementary wave of a self-similar fan. It occupies x/t in [lo, hi];
// shocks and contacts have lo == hi.
struct Wave {
    WaveType type = WaveType::None;
    double lo = 0.0;
    double hi = 0.0;
};

// Self-similar solution of a Riemann problem: left state | wave 1 | star | wave 2 | right state.
// Scalar laws use only waves[0] and set star = right.
struct WaveFan {
    ConservationLaw model = ConservationLaw::burgers();
    State left{};
    State right{};
    State star{};
    std::array<Wave, 2> waves{};

    std::size_t families() const { return model.components(); }
    bool trivial() const;
    // Smallest and largest signal speed in the fan (0 for a trivial fan).
    double min_speed() const;
    double max_speed() const;
};

// Throws VacuumError when no positive-density star state exists and NumericalError when the
// star-state iteration does not converge.
WaveFan solve_riemann(const ConservationLaw& model, const State& uL, const State& uR);

// Value of the fan at similarity coordinate xi = x / t.
State sample(const WaveFan& fan, double xi);

// Cell averages of the fan centred at `origin` at time t (t = 0 gives the averaged step data).
std::vector<State> cell_average_exact(const WaveFan& fan, double origin, double t, const Grid1D& grid);

// Average over [a, b] of the fan at time t.
State interval_average(const WaveFan& fan, double origin, double t, double a, double b);

}  // namespace fvpost
