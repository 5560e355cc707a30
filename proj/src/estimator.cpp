#include "fvpost/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/core.h>
#include <fmt/ostream.h>

namespace fvpost {

SlabMode parse_slab_mode(const std::string& name) {
    if (name == "eps13") return SlabMode::Eps13;
    if (name == "eps") return SlabMode::Eps;
    throw ConfigError(fmt::format("unknown slab size '{}' (expected eps13 or eps)", name));
}

std::string to_string(SlabMode mode) { return mode == SlabMode::Eps13 ? "eps13" : "eps"; }

std::vector<std::size_t> slab_boundaries(const SpaceTimeSolution& sol, double tau) {
    const std::size_t N = sol.steps();
    std::vector<std::size_t> b{0};
    const double t0 = sol.time(0);
    for (std::size_t mu = 1; b.back() < N; ++mu) {
        const double target = t0 + static_cast<double>(mu) * tau;
        std::size_t n = b.back() + 1;
        while (n < N && sol.time(n) < target) ++n;
        b.push_back(n);
    }
    return b;
}

double surge_estimate(double eps13, double kappa_prime_max, double delta_max, std::size_t surge_total) {
    return (eps13 * kappa_prime_max + delta_max) * static_cast<double>(surge_total);
}

double smooth_estimate(double eps13, double time_span, double kappa_sum) { return eps13 * (time_span + kappa_sum); }

EstimateReport error_estimator(const SpaceTimeSolution& sol, double sigma0, SlabMode mode, bool keep_partitions,
                               bool keep_residual_cells) {
    if (!(sigma0 > 0.0)) throw ConfigError(fmt::format("sigma must be positive (got {})", sigma0));
    EstimateReport r;
    r.sigma0 = sigma0;
    r.mode = mode;
    r.residual = epsilon(sol, std::nullopt, keep_residual_cells);
    r.epsilon = r.residual.epsilon;
    r.eps13 = std::cbrt(r.epsilon);
    r.time_span = sol.times().back() - sol.time(0);
    if (r.epsilon == 0.0) return r;

    const double tau = mode == SlabMode::Eps13 ? r.eps13 : r.epsilon;
    const auto bounds = slab_boundaries(sol, tau);
    const double scale = jump_scale(sol);
    double c0_den = std::numeric_limits<double>::infinity();

    for (std::size_t mu = 0; mu + 1 < bounds.size(); ++mu) {
        SlabPartition p = meso_slab_partition(sol, bounds[mu], bounds[mu + 1], r.epsilon, sigma0, scale);
        SlabSummary s;
        s.n0 = p.n0;
        s.n1 = p.n1;
        s.t0 = p.t0;
        s.t1 = p.t1;
        s.surges = p.surges.size();
        for (double osc : p.smooth_osc) s.kappa = std::max(s.kappa, osc);
        double slab_den = std::numeric_limits<double>::infinity();
        for (const auto& st : p.surges) {
            s.kappa_prime = std::max(s.kappa_prime, st.kappa);
            s.delta = std::max(s.delta, st.delta());
            slab_den = std::min(slab_den, std::cbrt(r.epsilon / st.delta() + st.delta() / r.eps13 + 2.0 * st.kappa));
        }
        if (!p.surges.empty()) s.c0 = sigma0 / slab_den;
        c0_den = std::min(c0_den, slab_den);
        s.cover_ok = check_cover(sol, p).ok();

        r.kappa_sum += s.kappa;
        r.kappa_prime_max = std::max(r.kappa_prime_max, s.kappa_prime);
        r.delta_max = std::max(r.delta_max, s.delta);
        r.surge_total += s.surges;
        r.slabs.push_back(s);
        if (keep_partitions) r.partitions.push_back(std::move(p));
    }
    if (std::isfinite(c0_den)) r.c0 = sigma0 / c0_den;
    r.estimate_surge = surge_estimate(r.eps13, r.kappa_prime_max, r.delta_max, r.surge_total);
    r.estimate_smooth = smooth_estimate(r.eps13, r.time_span, r.kappa_sum);
    return r;
}

void write_slab_csv(std::ostream& os, const EstimateReport& r) {
    os << "slab,n0,n1,t0,t1,surges,kappa,kappa_prime,delta,c0,cover_ok\n";
    for (std::size_t mu = 0; mu < r.slabs.size(); ++mu) {
        const auto& s = r.slabs[mu];
        fmt::print(os, "{},{},{},{:.6g},{:.6g},{},{:.6g},{:.6g},{:.6g},{:.6g},{}\n", mu, s.n0, s.n1, s.t0, s.t1,
                   s.surges, s.kappa, s.kappa_prime, s.delta, s.c0, s.cover_ok ? 1 : 0);
    }
}

}  // namespace fvpost
