#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvpost/estimator.hpp"
#include "fvpost/riemann.hpp"

namespace fvpost {

enum class CaseId { Psys2Raref, PsysRarefShock, BurgersCurved, Custom };

struct ReferenceSpec {
    enum class Kind { None, Exact, Fine };
    Kind kind = Kind::None;
    unsigned level = 14;
};

// "exact", "fine:L" or "none".
ReferenceSpec parse_reference(const std::string& text);
std::string to_string(const ReferenceSpec& ref);

// Piecewise-linear data: piece k covers (breaks[k-1], breaks[k]] and equals
// intercept[k] + slope[k] * x componentwise.
struct PiecewiseLinear {
    std::vector<double> breaks;
    std::vector<State> intercept;
    std::vector<State> slope;

    State value(double x) const;
    State average(double a, double b) const;
};

struct CaseConfig {
    CaseId id = CaseId::Custom;
    std::string name = "custom";
    ConservationLaw model = ConservationLaw::burgers();
    FluxKind flux = FluxKind::LaxFriedrichs;
    double x_min = -5.0;
    double x_max = 5.0;
    double cfl = 0.9;
    double sigma = 0.1;
    double t0 = 0.0;
    double T = 1.0;
    SlabMode slab_mode = SlabMode::Eps13;
    unsigned level = 7;

    // Riemann data (used when `pieces` is empty). The step sits at x = 0 at time fan_start.
    State left{};
    State right{};
    double fan_start = 0.0;
    std::optional<PiecewiseLinear> pieces;

    ReferenceSpec reference;
};

CaseConfig make_case(const std::string& name);
std::string to_string(CaseId id);

// Exact cell averages of the configured data at t0.
std::vector<State> initial_data(const CaseConfig& config, const Grid1D& grid);

SpaceTimeSolution solve_case(const CaseConfig& config, unsigned level);

// Conservative restriction by averaging groups of fine cells; the ratio must be an integer.
std::vector<State> restrict_average(std::span<const State> fine, std::size_t coarse_cells);
std::vector<State> prolong_constant(std::span<const State> coarse, std::size_t fine_cells);

// max_n of the ell-infinity norm of sum_j dx |u_j^n - ref_j^n|, with ref supplied per level.
double l1_distance(std::span<const State> u, std::span<const State> ref, double dx, std::size_t m);
double linf_l1_error_exact(const SpaceTimeSolution& sol, const WaveFan& fan, double fan_start);
double linf_l1_error(const SpaceTimeSolution& sol, const SpaceTimeSolution& reference);

// One streamed fine run compared against several coarse solutions of the same case. Fine levels
// are restricted to each coarse grid and interpolated linearly in time.
std::vector<double> fine_reference_errors(const CaseConfig& config, unsigned fine_level,
                                          const std::vector<const SpaceTimeSolution*>& coarse);

// EoC_k = -log2(v_{k+1} / v_k); missing when either value is not positive.
std::vector<std::optional<double>> eoc(const std::vector<double>& values);

struct LevelResult {
    unsigned level = 0;
    std::size_t cells = 0;
    std::size_t steps = 0;
    EstimateReport estimate;
    std::optional<double> error;
};

struct CaseRun {
    SpaceTimeSolution solution;
    LevelResult result;
};

struct EoCTable {
    std::string case_name;
    std::vector<LevelResult> rows;
};

// March, estimate and, for an exact reference, measure the error at config.level. A fine
// reference is evaluated here too unless `defer_fine` is set.
CaseRun run_case(const CaseConfig& config, bool keep_cells = false, bool defer_fine = false);

// Runs every level, then one fine reference pass when configured. `on_level` sees each
// finished level together with its solution before the solution is released.
using LevelCallback = std::function<void(const CaseConfig&, const CaseRun&)>;
EoCTable converge(const CaseConfig& config, unsigned level_min, unsigned level_max,
                  const LevelCallback& on_level = {}, bool keep_cells = false);

void write_eoc_csv(std::ostream& os, const EoCTable& table);
void write_report_json(std::ostream& os, const CaseConfig& config, const LevelResult& result);

}  // namespace fvpost
