#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "fvpost/partition.hpp"
#include "fvpost/residual.hpp"

namespace fvpost {

// eps13: slabs of length eps^(1/3); eps: slabs of length eps.
enum class SlabMode { Eps13, Eps };

SlabMode parse_slab_mode(const std::string& name);
std::string to_string(SlabMode mode);

struct SlabSummary {
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    double t0 = 0.0;
    double t1 = 0.0;
    std::size_t surges = 0;
    double kappa = 0.0;        // max oscillation over the smooth trapezoids
    double kappa_prime = 0.0;  // max oscillation over the surge sub-trapezoids
    double delta = 0.0;        // max strip width
    double c0 = 0.0;           // 0 when the slab has no surges
    bool cover_ok = true;
};

struct EstimateReport {
    double sigma0 = 0.1;
    SlabMode mode = SlabMode::Eps13;
    double epsilon = 0.0;
    double eps13 = 0.0;
    double time_span = 0.0;
    std::vector<SlabSummary> slabs;
    std::vector<SlabPartition> partitions;

    double kappa_prime_max = 0.0;
    double delta_max = 0.0;
    std::size_t surge_total = 0;
    double kappa_sum = 0.0;
    double c0 = 0.0;  // min over slabs with surges

    double estimate_surge = 0.0;   // E_S
    double estimate_smooth = 0.0;  // E_G

    ResidualReport residual;
};

// Slab boundary indices: slab mu ends at the first level with t^n >= t^0 + mu * tau.
std::vector<std::size_t> slab_boundaries(const SpaceTimeSolution& sol, double tau);

double surge_estimate(double eps13, double kappa_prime_max, double delta_max, std::size_t surge_total);
double smooth_estimate(double eps13, double time_span, double kappa_sum);

EstimateReport error_estimator(const SpaceTimeSolution& sol, double sigma0, SlabMode mode = SlabMode::Eps13,
                               bool keep_partitions = true, bool keep_residual_cells = false);

// Per-slab CSV rows.
void write_slab_csv(std::ostream& os, const EstimateReport& report);

}  // namespace fvpost
