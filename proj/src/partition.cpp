#include "fvpost/partition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/core.h>
#include <fmt/ostream.h>
#include <json.hpp>

namespace fvpost {

double inb(double x, const Grid1D& grid) { return std::max(grid.x_min, std::min(x, grid.x_max)); }

double jump_scale(const SpaceTimeSolution& sol) {
    StateRange r;
    r.add(sol.ghost_left());
    r.add(sol.ghost_right());
    for (std::size_t n = 0; n < sol.levels(); ++n) {
        for (const auto& u : sol.level(n)) r.add(u);
    }
    return r.oscillation(sol.components());
}

std::vector<JumpRegion> detect_jumps(const SpaceTimeSolution& sol, std::size_t n, double x_lo, double x_hi,
                                     double sigma0, double scale) {
    if (!(sigma0 > 0.0)) throw ConfigError(fmt::format("sigma must be positive (got {})", sigma0));
    const auto& g = sol.grid();
    const std::size_t m = sol.components();
    std::vector<JumpRegion> out;
    bool open = false;
    for (std::size_t j = 0; j + 1 < g.cells; ++j) {
        const double face = g.face(j + 1);
        bool flagged = false;
        if (face >= x_lo && face <= x_hi) {
            flagged = scale > 1e-14 && linf(abs(sol.at(n, j + 1) - sol.at(n, j)), m) > sigma0 * scale;
        }
        if (flagged) {
            if (open) {
                out.back().j2 = j + 1;
            } else {
                out.push_back({j, j + 1});
                open = true;
            }
        } else {
            open = false;
        }
    }
    return out;
}

std::vector<JumpRegion> detect_jumps(const SpaceTimeSolution& sol, std::size_t n, double x_lo, double x_hi,
                                     double sigma0) {
    return detect_jumps(sol, n, x_lo, x_hi, sigma0, jump_scale(sol));
}

double Trapezoid::left_at(double t) const {
    const double s = t_top > t_bot ? (t - t_bot) / (t_top - t_bot) : 0.0;
    return a_bot + (a_top - a_bot) * s;
}

double Trapezoid::right_at(double t) const {
    const double s = t_top > t_bot ? (t - t_bot) / (t_top - t_bot) : 0.0;
    return b_bot + (b_top - b_bot) * s;
}

std::pair<double, double> Trapezoid::x_extent(double t0, double t1) const {
    double lo = std::max(t0, t_bot), hi = std::min(t1, t_top);
    if (lo > hi) return {1.0, 0.0};
    // Width is affine in t; keep only the times where it is non-negative.
    const double w_lo = right_at(lo) - left_at(lo);
    const double w_hi = right_at(hi) - left_at(hi);
    if (w_lo < 0.0 && w_hi < 0.0) return {1.0, 0.0};
    double s_lo = lo, s_hi = hi;
    if (w_lo < 0.0) {
        s_lo = lo + (hi - lo) * (-w_lo) / (w_hi - w_lo);
    } else if (w_hi < 0.0) {
        s_hi = lo + (hi - lo) * w_lo / (w_lo - w_hi);
    }
    return {std::min(left_at(s_lo), left_at(s_hi)), std::max(right_at(s_lo), right_at(s_hi))};
}

Trapezoid SurgeTrapezoid::hull() const {
    return {left.a_bot, right.b_bot, left.a_top, right.b_top, left.t_bot, left.t_top};
}

Trapezoid SurgeTrapezoid::strip() const {
    return {left.b_bot, right.a_bot, left.b_top, right.a_top, left.t_bot, left.t_top};
}

std::pair<double, double> slab_wave_speeds(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1) {
    const auto& model = sol.model();
    double lo = model.min_wave_speed(sol.at(n0, 0)), hi = model.max_wave_speed(sol.at(n0, 0));
    for (std::size_t n = n0; n <= n1; ++n) {
        for (const auto& u : sol.level(n)) {
            lo = std::min(lo, model.min_wave_speed(u));
            hi = std::max(hi, model.max_wave_speed(u));
        }
    }
    return {lo, hi};
}

SurgeTrapezoid cstr_surge_trpz(double t_bot, double tau, const JumpRegion& bottom, const JumpRegion& top,
                               double delta_l, double delta_r, double lambda_minus, double lambda_plus,
                               double epsilon, const Grid1D& grid) {
    const double e13 = std::cbrt(epsilon);
    SurgeTrapezoid s;
    s.bottom = bottom;
    s.top = top;
    s.delta_l = delta_l;
    s.delta_r = delta_r;
    s.x0 = bottom.midpoint(grid);
    s.lambda = (top.midpoint(grid) - s.x0) / tau;
    s.detected_width = std::max(bottom.right(grid) - bottom.left(grid), top.right(grid) - top.left(grid));

    const double a = inb(s.x0 + lambda_minus * tau - delta_l - e13, grid);
    const double b = inb(s.x0 + lambda_plus * tau + delta_r + e13, grid);
    const double a_bot = inb(a - lambda_plus * tau, grid);
    const double b_bot = inb(b - lambda_minus * tau, grid);
    const double t_top = t_bot + tau;
    s.left = {a_bot, inb(s.x0 - delta_l, grid), a, inb(s.x0 - delta_l + s.lambda * tau, grid), t_bot, t_top};
    s.right = {inb(s.x0 + delta_r, grid), b_bot, inb(s.x0 + delta_r + s.lambda * tau, grid), b, t_bot, t_top};
    return s;
}

void StateRange::add(const State& u) {
    if (empty) {
        lo = hi = u;
        empty = false;
        return;
    }
    for (std::size_t c = 0; c < max_components; ++c) {
        lo[c] = std::min(lo[c], u[c]);
        hi[c] = std::max(hi[c], u[c]);
    }
}

void StateRange::merge(const StateRange& other) {
    if (other.empty) return;
    add(other.lo);
    add(other.hi);
}

double StateRange::oscillation(std::size_t m) const {
    if (empty) return 0.0;
    double r = 0.0;
    for (std::size_t c = 0; c < m; ++c) r = std::max(r, hi[c] - lo[c]);
    return r;
}

namespace {

// Cells whose closed x-interval meets [x_lo, x_hi]; returns an empty range as first > second.
std::pair<long, long> cells_meeting(const Grid1D& g, double x_lo, double x_hi) {
    if (x_lo > x_hi || x_hi < g.x_min || x_lo > g.x_max) return {1, 0};
    const long J = static_cast<long>(g.cells);
    long first = static_cast<long>(std::ceil((x_lo - g.x_min) / g.dx)) - 1;
    long last = static_cast<long>(std::floor((x_hi - g.x_min) / g.dx));
    return {std::max(first, 0L), std::min(last, J - 1)};
}

}  // namespace

StateRange trapezoid_range(const SpaceTimeSolution& sol, const Trapezoid& trap, std::size_t n0, std::size_t n1) {
    StateRange r;
    for (std::size_t n = n0; n < n1; ++n) {
        const auto [x_lo, x_hi] = trap.x_extent(sol.time(n), sol.time(n + 1));
        const auto [first, last] = cells_meeting(sol.grid(), x_lo, x_hi);
        for (long j = first; j <= last; ++j) r.add(sol.at(n, static_cast<std::size_t>(j)));
    }
    return r;
}

double oscillation(const SpaceTimeSolution& sol, const Trapezoid& trap, std::size_t n0, std::size_t n1) {
    return trapezoid_range(sol, trap, n0, n1).oscillation(sol.components());
}

std::vector<SurgeTrapezoid> surge_trpzs(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1,
                                        double sigma0, double lambda_minus, double lambda_plus, double epsilon,
                                        double scale, std::size_t* bottom_jumps) {
    const auto& g = sol.grid();
    const std::size_t m = sol.components();
    const double t_bot = sol.time(n0);
    const double tau = sol.time(n1) - t_bot;
    const double sd = (lambda_plus - lambda_minus) * tau;

    auto jumps = detect_jumps(sol, n0, g.x_min, g.x_max, sigma0, scale);
    std::vector<bool> keep(jumps.size(), true);
    for (std::size_t k = 0; k + 1 < jumps.size(); ++k) {
        if (jumps[k + 1].left(g) - jumps[k].right(g) < sd) keep[k] = keep[k + 1] = false;
    }
    std::vector<std::pair<JumpRegion, JumpRegion>> candidates;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        if (!keep[k]) continue;
        ++kept;
        const auto& jb = jumps[k];
        const auto top = detect_jumps(sol, n1, g.center(jb.j1) + lambda_minus * tau,
                                      g.center(jb.j2) + lambda_plus * tau, sigma0, scale);
        if (top.size() == 1) candidates.emplace_back(jb, top.front());
    }
    if (bottom_jumps) *bottom_jumps = kept;

    const double e13 = std::cbrt(epsilon), e23 = e13 * e13;
    const double floor_each = 0.5 * e23;
    std::vector<SurgeTrapezoid> out;
    for (const auto& [jb, jt] : candidates) {
        double dl = std::max(e13 - e23, floor_each), dr = dl;
        SurgeTrapezoid s = cstr_surge_trpz(t_bot, tau, jb, jt, dl, dr, lambda_minus, lambda_plus, epsilon, g);
        StateRange rl = trapezoid_range(sol, s.left, n0, n1);
        StateRange rr = trapezoid_range(sol, s.right, n0, n1);
        int steps = 0;
        while (rl.oscillation(m) <= tau && rr.oscillation(m) <= tau && (dl > floor_each || dr > floor_each)) {
            dl = std::max(dl - e23, floor_each);
            dr = std::max(dr - e23, floor_each);
            s = cstr_surge_trpz(t_bot, tau, jb, jt, dl, dr, lambda_minus, lambda_plus, epsilon, g);
            rl.merge(trapezoid_range(sol, s.left, n0, n1));
            rr.merge(trapezoid_range(sol, s.right, n0, n1));
            ++steps;
        }
        s.kappa = std::max(rl.oscillation(m), rr.oscillation(m));
        s.search_steps = steps;
        out.push_back(s);
    }
    return out;
}

SlabPartition meso_slab_partition(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1, double epsilon,
                                  double sigma0, double scale) {
    if (!(n1 > n0) || n1 >= sol.levels()) {
        throw ConfigError(fmt::format("invalid slab [{}, {}] for {} levels", n0, n1, sol.levels()));
    }
    const auto& g = sol.grid();
    SlabPartition p;
    p.n0 = n0;
    p.n1 = n1;
    p.t0 = sol.time(n0);
    p.t1 = sol.time(n1);
    std::tie(p.lambda_minus, p.lambda_plus) = slab_wave_speeds(sol, n0, n1);
    const double tau = p.tau();
    const double e23 = std::pow(epsilon, 2.0 / 3.0);

    p.surges = surge_trpzs(sol, n0, n1, sigma0, p.lambda_minus, p.lambda_plus, epsilon, scale, &p.bottom_jumps);

    // Two surges must leave a smooth gap wider than the characteristic cone; drop the right one otherwise.
    const double min_gap = tau * (p.lambda_plus - p.lambda_minus);
    for (std::size_t k = 0; k + 1 < p.surges.size();) {
        if (p.surges[k + 1].left.a_top - p.surges[k].right.b_top <= min_gap) {
            p.surges.erase(p.surges.begin() + static_cast<long>(k) + 1);
            ++p.dropped_surges;
        } else {
            ++k;
        }
    }

    auto add_smooth = [&](Trapezoid t) {
        t.t_bot = p.t0;
        t.t_top = p.t1;
        p.smooth.push_back(t);
    };
    if (p.surges.empty()) {
        add_smooth({g.x_min, g.x_max, g.x_min, g.x_max});
    } else {
        const double a0 = p.surges.front().left.a_top;
        if (g.x_min < a0) add_smooth({g.x_min, inb(a0 - tau * p.lambda_minus - e23, g), g.x_min, a0});
        for (std::size_t k = 0; k < p.surges.size(); ++k) {
            const double a = p.surges[k].right.b_top;
            if (a >= g.x_max) break;
            const bool last = k + 1 == p.surges.size();
            const double b = last ? g.x_max : p.surges[k + 1].left.a_top;
            const double b_bot = last ? g.x_max : inb(b - tau * p.lambda_minus - e23, g);
            add_smooth({inb(a - tau * p.lambda_plus - e23, g), b_bot, a, b});
        }
    }
    for (const auto& t : p.smooth) p.smooth_osc.push_back(oscillation(sol, t, n0, n1));
    return p;
}

SlabPartition meso_slab_partition(const SpaceTimeSolution& sol, std::size_t n0, std::size_t n1, double epsilon,
                                  double sigma0) {
    return meso_slab_partition(sol, n0, n1, epsilon, sigma0, jump_scale(sol));
}

CoverReport check_cover(const SpaceTimeSolution& sol, const SlabPartition& part) {
    const auto& g = sol.grid();
    CoverReport rep;
    std::vector<int> any(g.cells), smooth(g.cells);
    auto mark = [&](const Trapezoid& t, std::size_t n, std::vector<int>& counts) {
        const auto [x_lo, x_hi] = t.x_extent(sol.time(n), sol.time(n + 1));
        const auto [first, last] = cells_meeting(g, x_lo, x_hi);
        for (long j = first; j <= last; ++j) ++counts[static_cast<std::size_t>(j)];
    };
    for (std::size_t n = part.n0; n < part.n1; ++n) {
        std::fill(any.begin(), any.end(), 0);
        std::fill(smooth.begin(), smooth.end(), 0);
        for (const auto& s : part.surges) mark(s.hull(), n, any);
        for (const auto& t : part.smooth) {
            mark(t, n, any);
            mark(t, n, smooth);
        }
        for (std::size_t j = 0; j < g.cells; ++j) {
            if (any[j] == 0) ++rep.uncovered;
            if (smooth[j] > 2) ++rep.over_smooth;
        }
    }
    return rep;
}

namespace {

nlohmann::json to_json(const Trapezoid& t) {
    return {{"a_bot", t.a_bot}, {"b_bot", t.b_bot}, {"a_top", t.a_top},
            {"b_top", t.b_top}, {"t_bot", t.t_bot}, {"t_top", t.t_top}};
}

nlohmann::json to_json(const SlabPartition& p) {
    nlohmann::json j;
    j["n0"] = p.n0;
    j["n1"] = p.n1;
    j["t0"] = p.t0;
    j["t1"] = p.t1;
    j["lambda_minus"] = p.lambda_minus;
    j["lambda_plus"] = p.lambda_plus;
    j["bottom_jumps"] = p.bottom_jumps;
    j["dropped_surges"] = p.dropped_surges;
    j["surges"] = nlohmann::json::array();
    for (const auto& s : p.surges) {
        j["surges"].push_back({{"x0", s.x0},
                               {"lambda", s.lambda},
                               {"delta_l", s.delta_l},
                               {"delta_r", s.delta_r},
                               {"kappa", s.kappa},
                               {"detected_width", s.detected_width},
                               {"left", to_json(s.left)},
                               {"right", to_json(s.right)}});
    }
    j["smooth"] = nlohmann::json::array();
    for (std::size_t k = 0; k < p.smooth.size(); ++k) {
        auto t = to_json(p.smooth[k]);
        t["osc"] = p.smooth_osc[k];
        j["smooth"].push_back(t);
    }
    return j;
}

}  // namespace

void write_partition_json(std::ostream& os, const std::vector<SlabPartition>& slabs) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : slabs) j.push_back(to_json(p));
    os << j.dump(2) << '\n';
}

void write_partition_svg(std::ostream& os, const SpaceTimeSolution& sol, const std::vector<SlabPartition>& slabs) {
    const auto& g = sol.grid();
    const double width = 640.0, height = 400.0;
    const double t0 = sol.time(0), t1 = sol.times().back();
    auto px = [&](double x) { return (x - g.x_min) / g.length() * width; };
    auto py = [&](double t) { return height - (t - t0) / (t1 - t0) * height; };

    fmt::print(os, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    fmt::print(os,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
               "viewBox=\"0 0 {0} {1}\">\n",
               width, height);

    // Raster of the first component, at most 160 x 100 blocks.
    const std::size_t nx = std::min<std::size_t>(g.cells, 160), nt = std::min<std::size_t>(sol.levels(), 100);
    double lo = sol.at(0, 0)[0], hi = lo;
    for (std::size_t n = 0; n < sol.levels(); ++n) {
        for (const auto& u : sol.level(n)) {
            lo = std::min(lo, u[0]);
            hi = std::max(hi, u[0]);
        }
    }
    const double span = hi > lo ? hi - lo : 1.0;
    for (std::size_t it = 0; it < nt; ++it) {
        const std::size_t n = it * sol.levels() / nt;
        const double ta = t0 + (t1 - t0) * static_cast<double>(it) / nt;
        const double tb = t0 + (t1 - t0) * static_cast<double>(it + 1) / nt;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t j = ix * g.cells / nx + g.cells / nx / 2;
            const double v = (sol.at(n, std::min(j, g.cells - 1))[0] - lo) / span;
            const int r = static_cast<int>(255 * v), b = static_cast<int>(255 * (1.0 - v));
            fmt::print(os, "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"rgb({},{},{})\"/>\n",
                       width * ix / nx, py(tb), width / nx + 0.5, py(ta) - py(tb) + 0.5, r, 96, b);
        }
    }

    auto polygon = [&](const Trapezoid& t, const char* stroke, const char* extra) {
        fmt::print(os,
                   "<polygon points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"none\" "
                   "stroke=\"{}\" stroke-width=\"1.2\"{}/>\n",
                   px(t.a_bot), py(t.t_bot), px(t.b_bot), py(t.t_bot), px(t.b_top), py(t.t_top), px(t.a_top),
                   py(t.t_top), stroke, extra);
    };
    for (const auto& p : slabs) {
        for (const auto& t : p.smooth) polygon(t, "#00c000", "");
        for (const auto& s : p.surges) {
            polygon(s.left, "#ffd000", "");
            polygon(s.right, "#ffd000", "");
            polygon(s.strip(), "#ffffff", " stroke-dasharray=\"3,2\"");
        }
    }
    fmt::print(os, "</svg>\n");
}

}  // namespace fvpost
