#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "fvpost/solver.hpp"

namespace fvpost {

double inb(double x, const Grid1D& grid);

// Cells j1..j2 around a run of flagged interfaces.
struct JumpRegion {
    std::size_t j1 = 0;
    std::size_t j2 = 0;

    double left(const Grid1D& g) const { return g.face(j1); }
    double right(const Grid1D& g) const { return g.face(j2 + 1); }
    double midpoint(const Grid1D& g) const { return 0.5 * (left(g) + right(g)); }
    bool operator==(const JumpRegion&) const = default;
};

// Scale for the jump indicator: the largest component range over the whole solution.
double jump_scale(const SpaceTimeSolution& sol);

// Interfaces j|j+1 whose face lies in [x_lo, x_hi] and whose jump |u_{j+1} - u_j|_inf
// exceeds sigma0 * scale, merged into maximal runs. A zero scale flags nothing.
std::vector<JumpRegion> detect_jumps(const SpaceTimeSolution& sol, std::size_t n, double x_lo, double x_hi,
                                     double sigma0, double scale);
std::vector<JumpRegion> detect_jumps(const SpaceTimeSolution& sol, std::size_t n, double x_lo, double x_hi,
                                     double sigma0);

// Space-time trapezoid with bottom [a_bot, b_bot] at t_bot and top [a_top, b_top] at t_top.
struct Trapezoid {
    double a_bot = 0.0;
    double b_bot = 0.0;
    double a_top = 0.0;
    double b_top = 0.0;
    double t_bot = 0.0;
    double t_top = 0.0;

    double left_at(double t) const;
    double right_at(double t) const;
    // x-extent of the part of the trapezoid inside [t0, t1]; empty when first > second.
    std::pair<double, double> x_extent(double t0, double t1) const;
};

struct SurgeTrapezoid {
    Trapezoid left;   // S^l
    Trapezoid right;  // S^r
    double x0 = 0.0;
    double lambda = 0.0;
    double delta_l = 0.0;
    double delta_r = 0.0;
    JumpRegion bottom;
    JumpRegion top;
    double detected_width = 0.0;  // max width of the bottom and top jump regions
    double kappa = 0.0;           // oscillation over S^l and S^r after the strip search
    int search_steps = 0;

    double delta() const { return delta_l + delta_r; }
    // Whole surge trapezoid S and the excluded strip between S^l and S^r.
    Trapezoid hull() const;
    Trapezoid strip() const;
};

struct SlabPartition {
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    double t0 = 0.0;
    double t1 = 0.0;
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    std::vector<SurgeTrapezoid> surges;
    std::vector<Trapezoid> smooth;
    std::vector<double> smooth_osc;
    std::size_t bottom_jumps = 0;     // after the separation filter
    std::size_t dropped_surges = 0;   // removed because the smooth gap was too narrow

    double tau() const { return t1 - t0; }
};

// Min/max over all components and cells of the characteristic speeds on levels n0..n1.
std::pair<double, double> slab_wave_speeds(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1);

SurgeTrapezoid cstr_surge_trpz(double t_bot, double tau, const JumpRegion& bottom, const JumpRegion& top,
                               double delta_l, double delta_r, double lambda_minus, double lambda_plus,
                               double epsilon, const Grid1D& grid);

std::vector<SurgeTrapezoid> surge_trpzs(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1,
                                        double sigma0, double lambda_minus, double lambda_plus, double epsilon,
                                        double scale, std::size_t* bottom_jumps = nullptr);

SlabPartition meso_slab_partition(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1, double epsilon,
                                  double sigma0, double scale);
SlabPartition meso_slab_partition(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1, double epsilon,
                                  double sigma0);

// Running componentwise min/max of cell states.
struct StateRange {
    State lo{};
    State hi{};
    bool empty = true;

    void add(const State& u);
    void merge(const StateRange& other);
    double oscillation(std::size_t m) const;
};

// Range of u over the cells of rows n0..n1-1 whose closed rectangle meets the trapezoid.
StateRange trapezoid_range(const SpaceTimeSolution& sol, const Trapezoid& trap, std::size_t n0, std::size_t n1);
double oscillation(const SpaceTimeSolution& sol, const Trapezoid& trap, std::size_t n0, std::size_t n1);

struct CoverReport {
    std::size_t uncovered = 0;        // cells meeting no trapezoid
    std::size_t over_smooth = 0;      // cells meeting more than two smooth trapezoids
    bool ok() const { return uncovered == 0 && over_smooth == 0; }
};
CoverReport check_cover(const SpaceTimeSolution& sol, const SlabPartition& part);

void write_partition_json(std::ostream& os, const std::vector<SlabPartition>& slabs);
// SVG overlay of trapezoid outlines on a coarse raster of the first solution component.
void write_partition_svg(std::ostream& os, const SpaceTimeSolution& sol, const std::vector<SlabPartition>& slabs);

}  // namespace fvpost
