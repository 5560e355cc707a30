#include "fvpost/residual.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

namespace fvpost {

namespace {

State residual_flux_at(const SpaceTimeSolution& sol, FluxKind kind, std::size_t n, std::size_t face) {
    if (kind == sol.flux_kind()) return sol.interface_flux(n, face);
    const long j = static_cast<long>(face);
    return numerical_flux(kind, sol.model(), sol.extended(n, j - 1), sol.extended(n, j));
}

void require_step(const SpaceTimeSolution& sol, std::size_t j, std::size_t n) {
    if (n >= sol.steps() || j >= sol.cells()) {
        throw ConfigError(fmt::format("cell ({}, {}) outside the space-time grid", j, n));
    }
}

}  // namespace

TestFunctionCoefficients projection_coefficients(const EdgeAverages& a) {
    return {a.top, a.left - 2.0 * a.top + a.right, a.right - a.left};
}

EdgeAverages edge_averages(const TestFunctionCoefficients& c) {
    return {c.alpha1 + 0.5 * c.alpha2 - 0.5 * c.alpha3, c.alpha1, c.alpha1 + 0.5 * c.alpha2 + 0.5 * c.alpha3};
}

State weak_residual(const SpaceTimeSolution& sol, FluxKind kind, std::size_t j, std::size_t n,
                    const EdgeAverages& phi) {
    require_step(sol, j, n);
    const double dx = sol.grid().dx, dt = sol.dt(n);
    const State& u = sol.at(n, j);
    const State Fl = residual_flux_at(sol, kind, n, j);
    const State Fr = residual_flux_at(sol, kind, n, j + 1);
    return (dx * phi.top) * (u - sol.at(n + 1, j)) + (dt * (phi.right - phi.left)) * sol.model().flux(u) +
           dt * (phi.left * Fl - phi.right * Fr);
}

State local_residual_bound(const SpaceTimeSolution& sol, FluxKind kind, std::size_t j, std::size_t n) {
    require_step(sol, j, n);
    const double dx = sol.grid().dx, dt = sol.dt(n);
    const State f = sol.model().flux(sol.at(n, j));
    const State Fl = residual_flux_at(sol, kind, n, j);
    const State Fr = residual_flux_at(sol, kind, n, j + 1);
    State out{};
    for (std::size_t c = 0; c < sol.components(); ++c) {
        out[c] = 0.5 * dt * dt * std::fabs(Fl[c] - Fr[c]) + 0.5 * dx * dt * std::fabs(Fl[c] + Fr[c] - 2.0 * f[c]);
    }
    return out;
}

double EntropyTriplet::lower_bound() const { return std::min(0.0, e1) + std::min(0.0, e2) + std::min(0.0, e3); }

EntropyTriplet local_entropy_triplet(const SpaceTimeSolution& sol, FluxKind /*residual_flux*/, std::size_t j,
                                     std::size_t n) {
    require_step(sol, j, n);
    const auto& model = sol.model();
    const double dx = sol.grid().dx, dt = sol.dt(n);
    const long jj = static_cast<long>(j);
    const State& u = sol.at(n, j);
    const double ql = numerical_entropy_flux(model, sol.extended(n, jj - 1), u);
    const double qr = numerical_entropy_flux(model, u, sol.extended(n, jj + 1));
    const double de = model.entropy(u) - model.entropy(sol.at(n + 1, j));
    return {dx * de + dt * (ql - qr), 0.5 * dt * dt * (ql - qr), 0.5 * dx * dx * de + dt * dx * (ql - model.entropy_flux(u))};
}

State total_variation(const SpaceTimeSolution& sol, std::size_t n) {
    State tv{};
    const long J = static_cast<long>(sol.cells());
    for (long j = -1; j < J; ++j) tv = tv + abs(sol.extended(n, j + 1) - sol.extended(n, j));
    return tv;
}

double total_variation_scalar(const SpaceTimeSolution& sol, std::size_t n) {
    return linf(total_variation(sol, n), sol.components());
}

ResidualReport epsilon(const SpaceTimeSolution& sol, std::optional<FluxKind> residual_flux, bool keep_cells) {
    if (sol.levels() < 2) throw ConfigError("epsilon needs at least two time levels");
    const FluxKind kind = residual_flux.value_or(sol.flux_kind());
    check_flux_supported(kind, sol.model());

    ResidualReport r;
    r.residual_flux = kind;
    r.cells = sol.cells();
    r.steps = sol.steps();
    r.beta_n.resize(r.steps);
    r.eta_n.resize(r.steps);
    r.tv.resize(sol.levels());
    if (keep_cells) {
        r.bound.resize(r.steps * r.cells);
        r.triplets.resize(r.steps * r.cells);
    }

    const std::size_t m = sol.components();
    for (std::size_t n = 0; n < r.steps; ++n) {
        const double dt = sol.dt(n);
        State sum{};
        double entropy_sum = 0.0;
        for (std::size_t j = 0; j < r.cells; ++j) {
            const State b = local_residual_bound(sol, kind, j, n);
            const EntropyTriplet e = local_entropy_triplet(sol, kind, j, n);
            sum = sum + b;
            entropy_sum += std::fabs(e.lower_bound());
            if (keep_cells) {
                r.bound[n * r.cells + j] = b;
                r.triplets[n * r.cells + j] = e;
            }
        }
        r.beta_n[n] = linf(sum, m) / dt;
        r.eta_n[n] = entropy_sum / dt;
        r.beta = std::max(r.beta, r.beta_n[n]);
        r.eta = std::max(r.eta, r.eta_n[n]);
        r.max_ratio = std::max(r.max_ratio, dt / sol.grid().dx);
    }
    for (std::size_t n = 0; n < sol.levels(); ++n) {
        r.tv[n] = total_variation_scalar(sol, n);
        r.tv_max = std::max(r.tv_max, r.tv[n]);
    }
    r.C = std::max(3.0, std::sqrt(8.0 + 8.0 * r.max_ratio * r.max_ratio));
    const double residual = std::max(r.beta, r.eta);
    r.epsilon = (r.tv_max > 0.0 && residual > 0.0) ? r.C * residual / r.tv_max : 0.0;
    return r;
}

State corner_norm_oracle(const SpaceTimeSolution& sol, FluxKind kind, std::size_t j, std::size_t n) {
    require_step(sol, j, n);
    const double dx = sol.grid().dx, dt = sol.dt(n);
    State best{};
    for (int s2 = -1; s2 <= 1; ++s2) {
        for (int s3 = -1; s3 <= 1; ++s3) {
            // t-part (t^{n+1} - t) and x-part (x - x_j), evaluated edge by edge.
            const double a2 = s2 * dt, a3 = s3 * dx;
            const EdgeAverages phi{0.5 * a2 - 0.5 * a3, 0.0, 0.5 * a2 + 0.5 * a3};
            const State b = abs(weak_residual(sol, kind, j, n, phi));
            for (std::size_t c = 0; c < sol.components(); ++c) best[c] = std::max(best[c], b[c]);
        }
    }
    return best;
}

double SlabTestFunction::value(const Grid1D& grid, double t_rel, double x) const {
    const double r = std::clamp((x - grid.x_min) / grid.dx, 0.0, static_cast<double>(grid.cells));
    const std::size_t j = std::min(static_cast<std::size_t>(r), grid.cells - 1);
    const double w = r - static_cast<double>(j);
    return (1.0 - w) * face_values[j] + w * face_values[j + 1] + time_slope * t_rel;
}

State global_weak_residual(const SpaceTimeSolution& sol, FluxKind kind, std::size_t n, const SlabTestFunction& phi) {
    const double dt = sol.dt(n);
    const double shift = 0.5 * phi.time_slope * dt;
    State total{};
    for (std::size_t j = 0; j < sol.cells(); ++j) {
        const double gl = phi.face_values[j], gr = phi.face_values[j + 1];
        const EdgeAverages a{gl + shift, 0.5 * (gl + gr) + phi.time_slope * dt, gr + shift};
        total = total + weak_residual(sol, kind, j, n, a);
    }
    return total;
}

State global_weak_residual_direct(const SpaceTimeSolution& sol, FluxKind kind, std::size_t n,
                                  const SlabTestFunction& phi) {
    using Quad = boost::math::quadrature::gauss<double, 7>;
    const auto& g = sol.grid();
    const auto& model = sol.model();
    const double dt = sol.dt(n);
    const std::size_t m = sol.components();
    State total{};
    for (std::size_t j = 0; j < g.cells; ++j) {
        const double a = g.face(j), b = g.face(j + 1);
        const State& u0 = sol.at(n, j);
        const State& u1 = sol.at(n + 1, j);
        const State f = model.flux(u0);
        const double phi_x = (phi.face_values[j + 1] - phi.face_values[j]) / g.dx;
        const double bottom = Quad::integrate([&](double x) { return phi.value(g, 0.0, x); }, a, b);
        const double top = Quad::integrate([&](double x) { return phi.value(g, dt, x); }, a, b);
        const double area = g.dx * dt;
        for (std::size_t c = 0; c < m; ++c) {
            total[c] += u0[c] * bottom - u1[c] * top + area * (u0[c] * phi.time_slope + f[c] * phi_x);
        }
    }
    const State F_in = residual_flux_at(sol, kind, n, 0);
    const State F_out = residual_flux_at(sol, kind, n, g.cells);
    const double in = Quad::integrate([&](double t) { return phi.value(g, t, g.x_min); }, 0.0, dt);
    const double out = Quad::integrate([&](double t) { return phi.value(g, t, g.x_max); }, 0.0, dt);
    return total + (in * F_in - out * F_out);
}

void write_residual_cells(std::ostream& os, const SpaceTimeSolution& sol, const ResidualReport& report) {
    if (!report.has_cells()) throw ConfigError("residual report was computed without per-cell fields");
    const std::size_t m = sol.components();
    os << "n,j,t,x";
    for (std::size_t c = 0; c < m; ++c) os << ",bound_" << c;
    os << ",E1,E2,E3,entropy_lower\n";
    for (std::size_t n = 0; n < report.steps; ++n) {
        for (std::size_t j = 0; j < report.cells; ++j) {
            const auto& b = report.bound[n * report.cells + j];
            const auto& e = report.triplets[n * report.cells + j];
            fmt::print(os, "{},{},{:.10g},{:.10g}", n, j, sol.time(n), sol.grid().center(j));
            for (std::size_t c = 0; c < m; ++c) fmt::print(os, ",{:.6e}", b[c]);
            fmt::print(os, ",{:.6e},{:.6e},{:.6e},{:.6e}\n", e.e1, e.e2, e.e3, e.lower_bound());
        }
    }
}

}  // namespace fvpost
