#include "fvpost/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/core.h>

namespace fvpost {

namespace {

constexpr int max_star_iterations = 200;
constexpr double quadrature_tolerance = 1e-10;

// Velocity jump across a 1- or 2-wave connecting density rho_k to rho (Lax curve), and its derivative.
struct LaxBranch {
    const ConservationLaw& model;
    double rho_k;
    double p_k;
    double c_k;

    LaxBranch(const ConservationLaw& m, double rho) : model(m), rho_k(rho), p_k(m.pressure(rho)), c_k(m.sound_speed(rho)) {}

    std::pair<double, double> operator()(double rho) const {
        const double g = model.gamma();
        if (rho <= rho_k) {
            const double c = model.sound_speed(rho);
            return {2.0 / (g - 1.0) * (c - c_k), c / rho};
        }
        const double p = model.pressure(rho);
        const double dp = g * p / rho;
        const double num = (p - p_k) * (rho - rho_k);
        const double den = rho * rho_k;
        const double val = std::sqrt(num / den);
        const double dnum = dp * (rho - rho_k) + (p - p_k);
        const double dg = dnum / den - num * rho_k / (den * den);
        return {val, val > 0.0 ? 0.5 * dg / val : c_k / rho_k};
    }
};

WaveFan solve_burgers(const ConservationLaw& model, double uL, double uR) {
    WaveFan fan;
    fan.model = model;
    fan.left = make_state(uL);
    fan.right = make_state(uR);
    fan.star = fan.right;
    if (uL > uR) {
        const double s = 0.5 * (uL + uR);
        fan.waves[0] = {WaveType::Shock, s, s};
    } else if (uL < uR) {
        fan.waves[0] = {WaveType::Rarefaction, uL, uR};
    }
    return fan;
}

WaveFan solve_psystem(const ConservationLaw& model, const State& uL, const State& uR) {
    model.require_domain(uL);
    model.require_domain(uR);
    const double g = model.gamma();
    const double rhoL = uL[0], rhoR = uR[0];
    const double vL = uL[1] / rhoL, vR = uR[1] / rhoR;
    const double cL = model.sound_speed(rhoL), cR = model.sound_speed(rhoR);

    WaveFan fan;
    fan.model = model;
    fan.left = uL;
    fan.right = uR;

    if (2.0 * (cL + cR) / (g - 1.0) <= vR - vL) {
        throw VacuumError(fmt::format("Riemann data ({}, {}) | ({}, {}) creates vacuum", uL[0], uL[1], uR[0], uR[1]));
    }

    const LaxBranch left(model, rhoL), right(model, rhoR);
    auto residual = [&](double rho) {
        const auto [fl, dfl] = left(rho);
        const auto [fr, dfr] = right(rho);
        return std::make_tuple(fl + fr + vR - vL, dfl + dfr);
    };

    // Bracket the root: the residual is increasing in rho and negative near zero.
    double hi = std::max(rhoL, rhoR);
    int expansions = 0;
    while (std::get<0>(residual(hi)) < 0.0) {
        hi *= 2.0;
        if (++expansions > 200) throw NumericalError("failed to bracket the star density");
    }
    double lo = std::min(rhoL, rhoR);
    expansions = 0;
    while (std::get<0>(residual(lo)) > 0.0) {
        lo *= 0.5;
        if (++expansions > 2000) throw NumericalError("failed to bracket the star density");
    }

    double rho_star = 0.0;
    if (std::get<0>(residual(lo)) == 0.0) {
        rho_star = lo;
    } else if (std::get<0>(residual(hi)) == 0.0) {
        rho_star = hi;
    } else {
        std::uintmax_t iterations = max_star_iterations;
        rho_star = boost::math::tools::newton_raphson_iterate(residual, 0.5 * (lo + hi), lo, hi,
                                                              std::numeric_limits<double>::digits - 3, iterations);
        if (iterations >= static_cast<std::uintmax_t>(max_star_iterations)) {
            throw NumericalError("star-state iteration did not converge");
        }
    }

    const double v_star = 0.5 * ((vL - left(rho_star).first) + (vR + right(rho_star).first));
    fan.star = make_state(rho_star, rho_star * v_star);
    const double c_star = model.sound_speed(rho_star);

    if (rho_star > rhoL) {
        const double s = (fan.star[1] - uL[1]) / (rho_star - rhoL);
        fan.waves[0] = {WaveType::Shock, s, s};
    } else if (rho_star < rhoL) {
        fan.waves[0] = {WaveType::Rarefaction, vL - cL, v_star - c_star};
    }
    if (rho_star > rhoR) {
        const double s = (uR[1] - fan.star[1]) / (rhoR - rho_star);
        fan.waves[1] = {WaveType::Shock, s, s};
    } else if (rho_star < rhoR) {
        fan.waves[1] = {WaveType::Rarefaction, v_star + c_star, vR + cR};
    }
    return fan;
}

// State inside a rarefaction of the given family at similarity coordinate xi.
State rarefaction_state(const WaveFan& fan, int family, double xi) {
    const auto& model = fan.model;
    if (model.kind() == ModelKind::Burgers) return make_state(xi);
    const double g = model.gamma();
    double c = 0.0, v = 0.0;
    if (family == 0) {
        const double w = fan.left[1] / fan.left[0] + 2.0 * model.sound_speed(fan.left[0]) / (g - 1.0);
        c = (g - 1.0) / (g + 1.0) * (w - xi);
        v = xi + c;
    } else {
        const double z = fan.right[1] / fan.right[0] - 2.0 * model.sound_speed(fan.right[0]) / (g - 1.0);
        c = (g - 1.0) / (g + 1.0) * (xi - z);
        v = xi - c;
    }
    const double rho = std::pow(c * c / (model.pressure_constant() * g), 1.0 / (g - 1.0));
    return make_state(rho, rho * v);
}

}  // namespace

bool WaveFan::trivial() const {
    return waves[0].type == WaveType::None && waves[1].type == WaveType::None;
}

double WaveFan::min_speed() const {
    for (const auto& w : waves) {
        if (w.type != WaveType::None) return w.lo;
    }
    return 0.0;
}

double WaveFan::max_speed() const {
    for (auto it = waves.rbegin(); it != waves.rend(); ++it) {
        if (it->type != WaveType::None) return it->hi;
    }
    return 0.0;
}

WaveFan solve_riemann(const ConservationLaw& model, const State& uL, const State& uR) {
    if (model.kind() == ModelKind::Burgers) return solve_burgers(model, uL[0], uR[0]);
    return solve_psystem(model, uL, uR);
}

State sample(const WaveFan& fan, double xi) {
    const Wave& w1 = fan.waves[0];
    const Wave& w2 = fan.waves[1];
    switch (w1.type) {
        case WaveType::Shock:
        case WaveType::Contact:
            if (xi < w1.lo) return fan.left;
            break;
        case WaveType::Rarefaction:
            if (xi <= w1.lo) return fan.left;
            if (xi < w1.hi) return rarefaction_state(fan, 0, xi);
            break;
        case WaveType::None:
            break;
    }
    switch (w2.type) {
        case WaveType::Shock:
        case WaveType::Contact:
            return xi < w2.lo ? fan.star : fan.right;
        case WaveType::Rarefaction:
            if (xi >= w2.hi) return fan.right;
            if (xi > w2.lo) return rarefaction_state(fan, 1, xi);
            return fan.star;
        case WaveType::None:
            break;
    }
    return fan.star;
}

State interval_average(const WaveFan& fan, double origin, double t, double a, double b) {
    const std::size_t m = fan.families();
    if (!(b > a)) return sample(fan, t > 0.0 ? (a - origin) / t : (a < origin ? -1.0 : 1.0));
    if (t <= 0.0) {
        const double left_len = std::clamp(origin - a, 0.0, b - a);
        if (left_len == 0.0) return fan.right;
        if (left_len == b - a) return fan.left;
        return (1.0 / (b - a)) * (left_len * fan.left + (b - a - left_len) * fan.right);
    }

    // Split [a, b] at every wave edge so each piece is either constant or inside one fan.
    std::vector<double> cuts{a, b};
    for (const auto& w : fan.waves) {
        if (w.type == WaveType::None) continue;
        for (double s : {w.lo, w.hi}) {
            const double x = origin + s * t;
            if (x > a && x < b) cuts.push_back(x);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    State total{};
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        if (!(hi > lo)) continue;
        const double xi_mid = (0.5 * (lo + hi) - origin) / t;
        bool in_fan = false;
        for (const auto& w : fan.waves) {
            if (w.type == WaveType::Rarefaction && xi_mid > w.lo && xi_mid < w.hi) in_fan = true;
        }
        if (!in_fan) {
            if (lo == a && hi == b) return sample(fan, xi_mid);
            total = total + (hi - lo) * sample(fan, xi_mid);
            continue;
        }
        for (std::size_t c = 0; c < m; ++c) {
            auto f = [&](double x) { return sample(fan, (x - origin) / t)[c]; };
            total[c] += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 15,
                                                                                      quadrature_tolerance);
        }
    }
    return (1.0 / (b - a)) * total;
}

std::vector<State> cell_average_exact(const WaveFan& fan, double origin, double t, const Grid1D& grid) {
    std::vector<State> out(grid.cells);
    for (std::size_t j = 0; j < grid.cells; ++j) {
        out[j] = interval_average(fan, origin, t, grid.face(j), grid.face(j + 1));
    }
    return out;
}

}  // namespace fvpost
